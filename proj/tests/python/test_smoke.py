import numpy as np
import pytest

import gmlab


def test_shapes_round_trip():
    tri = gmlab.load_shape("triangle")
    assert tri.U == ["u1"]
    assert tri.V == ["v1", "v2"]
    assert len(tri.edges) == 3
    again = gmlab.parse_shape(str(tri))
    assert str(again) == str(tri)
    assert set(gmlab.builtin_shapes()) >= {"adjacency", "triangle", "two_path", "single_edge"}


def test_parse_error_reports_position():
    with pytest.raises(gmlab.ShapeParseError) as info:
        gmlab.parse_shape("shape s {\n  vertices: u;\n  edges: (u,x);\n  U: [u];\n  V: [u];\n}")
    assert info.value.args[1] == 3
    assert isinstance(info.value, ValueError)


def test_separators():
    assert gmlab.min_vertex_separator(gmlab.load_shape("two_path")) == ["w1"]
    edge = gmlab.load_shape("single_edge")
    assert gmlab.weighted_separator(edge, 100, 0.05) == ["u"]
    assert gmlab.weighted_separator(edge, 100, 0.001) == ["u", "v"]


def test_bound():
    b = gmlab.bound(gmlab.load_shape("triangle"), 1e4, eps=0.01)
    assert b["dominant_exponent"] == pytest.approx(1.0)
    assert b["separator"] == ["u1"]


def test_matrix_functions():
    m = np.diag([3.0, 4.0])
    assert gmlab.schatten_2t(m, 2) == pytest.approx(337.0)
    assert gmlab.spectral_norm(m) == pytest.approx(4.0)


def test_graph_matrix_and_norms():
    a = gmlab.graph_matrix(gmlab.load_shape("adjacency"), 6, seed=3)
    assert a.shape == (6, 6)
    assert np.allclose(a, a.T)
    assert np.all(np.abs(a[~np.eye(6, dtype=bool)]) == 1)
    norms = gmlab.empirical_norms(gmlab.load_shape("adjacency"), 16, samples=3, seed=1)
    assert norms == gmlab.empirical_norms(gmlab.load_shape("adjacency"), 16, samples=3, seed=1)
    assert np.linalg.norm(gmlab.graph_matrix(gmlab.load_shape("adjacency"), 6, seed=3), 2) > 0


def test_estimate_csv_header():
    csv = gmlab.estimate_csv(gmlab.load_shape("adjacency"), [8], samples=2, seed=4)
    assert csv.splitlines()[0] == "shape,n,p,sample_index,seed,norm,elapsed_ms"
    assert len(csv.splitlines()) == 3


def test_verify_identities():
    report = gmlab.verify("identities")
    assert report["holds"] is True
    assert report["suite"] == "identities"


def test_tensornet_small():
    r = gmlab.tensornet([4, 8], samples=2)
    assert [row["n"] for row in r["sweep"]] == [4, 8]
    assert r["ratio_spread"] >= 1.0
