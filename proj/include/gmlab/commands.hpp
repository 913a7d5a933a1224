#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmlab/bounds.hpp"
#include "gmlab/graph.hpp"
#include "gmlab/shape.hpp"
#include "gmlab/tensornet.hpp"
#include "gmlab/verify.hpp"

namespace gmlab {

enum class OutputFormat { Text, Csv, Json };
OutputFormat parse_format(const std::string& s);

// A built-in shape name (adjacency, triangle, two_path, single_edge) or a path to a shape file.
Shape load_shape(const std::string& ref);
const std::vector<std::string>& builtin_shape_names();

struct BoundRequest {
    Shape shape;
    double n = 0;
    std::optional<PRule> p;  // absent: dense case
    std::optional<int> t;
    std::optional<double> eps;
    BoundConstants consts;
};
std::string cmd_bound(const BoundRequest& req, OutputFormat fmt);

struct SweepRequest {
    Shape shape;
    std::vector<int> n_list;
    PRule p;
    int samples = 5;
    uint64_t seed = 0;
    bool timing = false;
};
std::string cmd_estimate(const SweepRequest& req, OutputFormat fmt);
// Same rows as estimate plus a fitted-exponent summary row.
std::string cmd_scaling(const SweepRequest& req, OutputFormat fmt);
ScalingFit scaling_fit(const SweepRequest& req, std::vector<NormStats>* per_n = nullptr);

struct TensorNetRequest {
    std::vector<int> n_list;
    int c = 1, d = 1;
    int samples = 5;
    uint64_t seed = 0;
    int max_t = 2;
    int explicit_max_n = 4;
};
struct TensorNetSweep {
    std::vector<TensorNetReport> reports;
    double ratio_spread = 0.0;  // max ratio / min ratio
    std::vector<std::pair<int, TensorNetSchatten>> schatten;  // (n, values) for 2 ≤ n ≤ explicit_max_n
};
TensorNetSweep tensornet_sweep(const TensorNetRequest& req);
std::string cmd_tensornet(const TensorNetRequest& req, OutputFormat fmt);

inline constexpr uint64_t kDefaultSeed = 20240601;
// --seed wins over GMLAB_SEED; throws std::invalid_argument on a malformed value.
uint64_t resolve_seed(const std::optional<std::string>& flag);
uint64_t parse_seed(const std::string& text);

}  // namespace gmlab
