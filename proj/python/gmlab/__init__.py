"""Python access to the gmlab core: shapes, norm bounds, Monte Carlo norms and verification suites."""

import json

from ._gmlab import (
    DEFAULT_SEED,
    Shape,
    ShapeParseError,
    builtin_shapes,
    empirical_norms,
    estimate_csv,
    graph_matrix,
    load_shape,
    min_vertex_separator,
    parse_shape,
    print_shape,
    scaling_exponent,
    schatten_2t,
    set_workers,
    spectral_norm,
    suite_names,
    weighted_separator,
)
from . import _gmlab


def bound(shape, n, **kwargs):
    """Evaluate the norm bound for a shape; keyword arguments are p, p_rule, t, eps, C, R4."""
    return json.loads(_gmlab.bound_json(shape, n, **kwargs))


def tensornet(n_list=(8, 16, 32, 64), **kwargs):
    return json.loads(_gmlab.tensornet_json(list(n_list), **kwargs))


def verify(suite="all", seed=DEFAULT_SEED):
    return json.loads(_gmlab.run_suite_json(suite, seed))


__all__ = [
    "DEFAULT_SEED",
    "Shape",
    "ShapeParseError",
    "bound",
    "builtin_shapes",
    "empirical_norms",
    "estimate_csv",
    "graph_matrix",
    "load_shape",
    "min_vertex_separator",
    "parse_shape",
    "print_shape",
    "scaling_exponent",
    "schatten_2t",
    "set_workers",
    "spectral_norm",
    "suite_names",
    "tensornet",
    "verify",
    "weighted_separator",
]
