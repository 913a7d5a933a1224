// One PASS/FAIL line per acceptance criterion. Usage: acceptance <id|all> [path-to-gmlab]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "gmlab/commands.hpp"
#include "gmlab/graph.hpp"
#include "gmlab/matrix.hpp"
#include "gmlab/parallel.hpp"
#include "gmlab/random.hpp"
#include "gmlab/shape.hpp"
#include "gmlab/sparse.hpp"
#include "gmlab/tensornet.hpp"
#include "gmlab/verify.hpp"

namespace fs = std::filesystem;
using namespace gmlab;

namespace {

constexpr uint64_t kSeed = kDefaultSeed;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(4);
    o << v;
    return o.str();
}

const CheckReport* find(const SuiteReport& r, const std::string& lemma, const std::string& property = "") {
    for (auto& c : r.checks)
        if (c.lemma == lemma && c.property == property) return &c;
    return nullptr;
}

// Every listed check must exist, hold and have enough probes.
void require_checks(const SuiteReport& r, const std::vector<std::string>& lemmas, int min_probes, Outcome& out) {
    for (auto& l : lemmas) {
        bool seen = false;
        for (auto& c : r.checks) {
            if (c.lemma != l) continue;
            seen = true;
            if (!c.holds || c.probes < min_probes) {
                out.pass = false;
                out.detail += " " + l + (c.property.empty() ? "" : "[" + c.property + "]") + " probes=" +
                              std::to_string(c.probes) + " holds=" + (c.holds ? "1" : "0") + ";";
            }
        }
        if (!seen) {
            out.pass = false;
            out.detail += " missing " + l + ";";
        }
    }
}

Outcome identities() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteReport r = run_suite("identities", kSeed);
    const double secs = seconds_since(t0);
    require_checks(r,
                   {"claim_3_4", "prop_3_3", "prop_7_20", "lemma_7_2", "lemma_7_5", "lemma_7_6", "lemma_7_14",
                    "claim_7_21"},
                   30, out);
    double worst = 0;
    for (auto& c : r.checks) worst = std::max(worst, c.value);
    for (const char* prop : {"antisymmetry", "reproducing", "annihilation"})
        if (!find(r, "lemma_7_6", prop)) {
            out.pass = false;
            out.detail += std::string(" missing lemma_7_6 ") + prop + ";";
        }
    if (worst >= kResidualTol || secs >= 120) out.pass = false;
    out.detail = std::to_string(r.checks.size()) + " checks, max residual " + fmt(worst) + ", " + fmt(secs) + " s" +
                 out.detail;
    return out;
}

Outcome inequalities() {
    Outcome out;
    const SuiteReport r = run_suite("inequalities", kSeed);
    require_checks(r,
                   {"theorem_1_1", "theorem_1_2", "lemma_3_2", "lemma_7_10", "lemma_7_13", "lemma_7_19", "fact_2_2",
                    "fact_2_3", "lemma_7_11", "lemma_2_4", "lemma_8_6", "lemma_8_7", "theorem_6_7", "lemma_6_9",
                    "lemma_7_15", "lemma_7_16", "lemma_7_17", "lemma_7_18"},
                   100, out);
    double worst_slack = 1e300, worst_spread = 0;
    int constants = 0;
    for (auto& c : r.checks) {
        if (c.slack_metric) worst_slack = std::min(worst_slack, c.value);
        if (!c.minimal_C) continue;
        ++constants;
        const double a = *c.minimal_C, b = c.minimal_C_alt.value_or(NAN);
        const double spread = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
        if (!std::isfinite(a) || !std::isfinite(b) || !(spread <= kStabilityTol)) {
            out.pass = false;
            out.detail += " unstable " + c.lemma + " " + fmt(a) + " vs " + fmt(b) + ";";
        }
        worst_spread = std::max(worst_spread, spread);
    }
    if (worst_slack < -1e-8 || constants < 6) out.pass = false;
    out.detail = std::to_string(r.checks.size()) + " checks, min slack " + fmt(worst_slack) + ", " +
                 std::to_string(constants) + " minimal constants, max seed spread " + fmt(100 * worst_spread) + "%" +
                 out.detail;
    return out;
}

Outcome exact_lhs() {
    Outcome out;
    const SuiteReport r = run_suite("recursion", kSeed);
    const CheckReport* recompute = find(r, "exact_lhs", "independent_recompute");
    const CheckReport* bound = find(r, "theorem_1_2", "n<=12");
    if (!recompute || !bound) return {false, "recursion suite lacks the exact-LHS checks"};
    out.pass = recompute->holds && bound->holds && recompute->value < 1e-10 && bound->value >= -1e-8;
    out.detail = std::to_string(recompute->probes) + " instances n<=12, max rel diff " + fmt(recompute->value) +
                 ", min slack vs bound " + fmt(bound->value);
    return out;
}

double fitted_exponent(const std::string& shape, const std::vector<int>& ns, PRule p) {
    SweepRequest req;
    req.shape = load_shape(shape);
    req.n_list = ns;
    req.p = p;
    req.samples = 5;
    req.seed = kSeed;
    return scaling_fit(req).slope;
}

Outcome dense_exponents() {
    Outcome out;
    const std::vector<int> ns{32, 64, 128, 256, 512};
    const std::vector<std::tuple<std::string, double, double>> targets{
        {"adjacency", 0.4, 0.6}, {"triangle", 0.9, 1.1}, {"two_path", 1.35, 1.65}};
    const auto t0 = std::chrono::steady_clock::now();
    for (auto& [shape, lo, hi] : targets) {
        const double e = fitted_exponent(shape, ns, PRule{PRule::Fixed, 0.5});
        if (!(e >= lo && e <= hi)) out.pass = false;
        out.detail += shape + " " + fmt(e) + " in [" + fmt(lo) + "," + fmt(hi) + "]; ";
    }
    const double secs = seconds_since(t0);
    if (secs >= 600) out.pass = false;
    out.detail += fmt(secs) + " s";
    return out;
}

Outcome sparse_exponent() {
    const double e = fitted_exponent("single_edge", {64, 128, 256, 512, 1024}, PRule{PRule::Power, 0.5});
    return {e >= 0.35 && e <= 0.65 && e < 0.7, "single_edge at p=n^-1/2: exponent " + fmt(e) + " in [0.35,0.65]"};
}

Outcome tensornet_ratio() {
    TensorNetRequest req;
    req.n_list = {8, 16, 32, 64};
    req.seed = kSeed;
    req.explicit_max_n = 0;
    const TensorNetSweep sw = tensornet_sweep(req);
    std::string ratios;
    for (auto& r : sw.reports) ratios += " " + fmt(r.ratio);
    return {sw.ratio_spread < 2.5, "ratios" + ratios + ", spread " + fmt(sw.ratio_spread) + "x (< 2.5x)"};
}

Outcome tensornet_formula() {
    Outcome out;
    for (int n = 2; n <= 4; ++n)
        for (int t = 1; t <= 2; ++t) {
            const TensorNetSchatten s = tensornet_schatten(TensorNetwork{n, 1, 1}, t);
            const bool equal = std::abs(s.ef20 - s.formula) <= 1e-9 * s.formula;
            if (!equal) out.pass = false;
            out.detail += "n=" + std::to_string(n) + ",t=" + std::to_string(t) + ": explicit " + fmt(s.ef20) +
                          (equal ? " == " : " != ") + "formula " + fmt(s.formula) + "; ";
        }
    return out;
}

Outcome oracles() {
    Outcome out;
    Rng rng(kSeed);
    // Schatten: trace power vs singular values.
    double worst_schatten = 0;
    for (int i = 0; i < 100; ++i) {
        const int r = rng.uniform_int(1, 12), c = rng.uniform_int(1, 12), t = rng.uniform_int(1, 4);
        Eigen::MatrixXd m(r, c);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < c; ++b) m(a, b) = rng.uniform(-1, 1);
        const double tp = schatten_2t(m, t, SchattenPath::TracePower), sv = schatten_2t(m, t, SchattenPath::Singular);
        worst_schatten = std::max(worst_schatten, std::abs(tp - sv) / std::max(std::abs(sv), 1e-300));
    }
    if (!(worst_schatten < 1e-8)) out.pass = false;

    // Matrix-free operator vs materialized graph matrix.
    const std::vector<Shape> shapes{adjacency_shape(), triangle_shape(), two_path_shape(), single_edge_shape()};
    double worst_matvec = 0;
    for (int i = 0; i < 20; ++i) {
        const Shape& s = shapes[i % shapes.size()];
        const int n = rng.uniform_int(6, 12);
        const EdgeSample g = sample_edges(n, VariableDistribution::p_biased(i % 2 ? 0.5 : 0.2), derive_seed(kSeed, i));
        const Eigen::MatrixXd m = build_graph_matrix(s, g).dense();
        const LinearOperator op = graph_operator(s, g);
        Eigen::VectorXd x(m.cols()), y, u(m.rows()), v;
        for (auto& e : x) e = rng.uniform(-1, 1);
        for (auto& e : u) e = rng.uniform(-1, 1);
        op.apply(x, y);
        op.apply_transpose(u, v);
        worst_matvec = std::max({worst_matvec, (y - m * x).cwiseAbs().maxCoeff(),
                                 (v - m.transpose() * u).cwiseAbs().maxCoeff()});
    }
    if (!(worst_matvec < 1e-10)) out.pass = false;

    // μ_r pruned vs brute force.
    int mu_mismatch = 0;
    for (int i = 0; i < 50; ++i) {
        const HypergraphPoly f = random_hypergraph_poly(rng, 10, 15, 3);
        const DistList d = uniform_dists(f.max_slot() + 1, VariableDistribution::p_biased(0.25).squared());
        for (int r = 0; r <= f.degree(); ++r)
            if (mu_r(f, d, r) != mu_r_brute(f, d, r)) ++mu_mismatch;
    }
    if (mu_mismatch) out.pass = false;

    // Exhaustive vs min-cut separators.
    int sep_mismatch = 0, sep_shapes = 0;
    std::vector<Shape> corpus = shapes;
    for (int i = 0; i < 200; ++i) corpus.push_back(random_shape(rng, 8));
    for (auto& s : corpus) {
        if (s.n_vertices() > 8) continue;
        ++sep_shapes;
        if (min_vertex_separator(s).size != min_cut_separator(s).size) ++sep_mismatch;
    }
    if (sep_mismatch) out.pass = false;

    out.detail = "schatten max rel " + fmt(worst_schatten) + " (100); matvec max abs " + fmt(worst_matvec) +
                 " (20); mu_r mismatches " + std::to_string(mu_mismatch) + " (50); separator mismatches " +
                 std::to_string(sep_mismatch) + " (" + std::to_string(sep_shapes) + " shapes)";
    return out;
}

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

RunResult run(const std::string& exe, const std::string& args) {
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(std::hash<std::string>{}(args));
    const fs::path o = dir / ("gmlab_acc_" + tag + ".out"), e = dir / ("gmlab_acc_" + tag + ".err");
    const std::string cmd = "\"" + exe + "\" " + args + " >\"" + o.string() + "\" 2>\"" + e.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    fs::remove(o);
    fs::remove(e);
    return r;
}

Outcome determinism(const std::string& exe) {
    if (exe.empty() || !fs::exists(exe)) return {false, "gmlab executable not given"};
    Outcome out;
    const std::vector<std::string> commands{
        "verify --suite all",
        "--seed 7 estimate triangle --n-list 16,24 --samples 3",
        "estimate two_path --n 20 --samples 2",
        "--seed 11 scaling adjacency --n-list 32,64,128 --samples 3",
        "scaling single_edge --p-rule power:0.5 --n-list 64,128,256 --samples 2",
    };
    int compared = 0;
    for (auto& c : commands) {
        const RunResult base = run(exe, "--workers 1 " + c);
        if (base.code != 0 || base.out.empty()) {
            out.pass = false;
            out.detail += " '" + c + "' exit " + std::to_string(base.code) + ";";
            continue;
        }
        for (const char* w : {"--workers 1 ", "--workers 4 "}) {
            ++compared;
            if (run(exe, w + c).out != base.out) {
                out.pass = false;
                out.detail += " '" + c + "' differs with " + w + ";";
            }
        }
    }
    const RunResult fault = run(exe, "verify --suite identities --fault-inject kernel");
    const bool named = fault.err.find("lemma_7_6") != std::string::npos;
    if (fault.code != 1 || !named) out.pass = false;
    out.detail = std::to_string(commands.size()) + " commands, " + std::to_string(compared) +
                 " byte comparisons; fault control exit " + std::to_string(fault.code) +
                 (named ? ", names lemma_7_6" : ", does not name lemma_7_6") + out.detail;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string which = argc > 1 ? argv[1] : "all";
    const std::string exe = argc > 2 ? argv[2] : "";
    set_worker_count(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1", identities},
        {"2", inequalities},
        {"3", exact_lhs},
        {"4", dense_exponents},
        {"5", sparse_exponent},
        {"6a", tensornet_ratio},
        {"6b", tensornet_formula},
        {"7", oracles},
        {"8", [&] { return determinism(exe); }},
    };
    bool all_pass = true, any = false;
    for (auto& [id, fn] : criteria) {
        if (which != "all" && which != id) continue;
        any = true;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
        all_pass = all_pass && o.pass;
    }
    if (!any) {
        std::cerr << "unknown criterion '" << which << "'\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
