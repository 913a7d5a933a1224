#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmlab/matrix.hpp"
#include "gmlab/random.hpp"
#include "gmlab/shape.hpp"
#include "gmlab/sparse.hpp"

namespace gmlab {

// ---- randomized corpora

struct PolyInstance {
    MatrixPolynomial mf;
    DistList dists;
    std::string law;
};

struct CorpusSpec {
    int min_slots = 2, max_slots = 4;
    int max_degree = 3;      // total degree d_p
    int max_var_degree = 1;  // 1 gives multilinear entries
    int max_rows = 2, max_cols = 2;
    bool rademacher_only = false;
};

PolyInstance random_instance(Rng& rng, const CorpusSpec& spec);
std::vector<PolyInstance> make_corpus(uint64_t seed, int count, const CorpusSpec& spec);
// Two-point laws cycled through by the corpora: p = 1/2, p = 1/4 and a skewed law.
VariableDistribution corpus_law(int which);

HypergraphPoly random_hypergraph_poly(Rng& rng, int max_slots, int max_edges, int max_degree);
Shape random_shape(Rng& rng, int max_vertices);
Shape random_simple_shape(Rng& rng, int max_vertices);

// ---- suites

struct CheckReport {
    std::string lemma;     // stable identifier, e.g. "lemma_7_6"
    std::string property;  // sub-property, may be empty
    bool slack_metric = false;  // min_slack (true) or max_residual (false)
    int probes = 0;
    double value = 0.0;
    bool holds = true;
    std::optional<double> minimal_C, minimal_C_alt;  // minimal validating constant on two disjoint corpora
    std::string note;
};

struct SuiteReport {
    std::string suite;
    uint64_t seed = 0;
    std::vector<CheckReport> checks;
    bool holds() const;
    std::vector<std::string> failing() const;  // lemma ids, in report order, without repeats
    std::string to_json() const;
};

inline constexpr double kResidualTol = 1e-9;
inline constexpr double kStabilityTol = 0.10;

struct SuiteSizes {
    int identity_instances = 30;
    int inequality_instances = 100;
    int oracle_instances = 50;
};

const std::vector<std::string>& suite_names();  // identities, inequalities, recursion, sparse, all
SuiteReport run_suite(const std::string& suite, uint64_t seed, const SuiteSizes& sizes = {});

}  // namespace gmlab
