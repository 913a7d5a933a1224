#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gmlab/commands.hpp"
#include "gmlab/estimation.hpp"
#include "gmlab/general.hpp"
#include "gmlab/parallel.hpp"

namespace {

using namespace gmlab;

constexpr int kExitOk = 0, kExitRuntime = 1, kExitUsage = 2;

struct Globals {
    std::optional<std::string> seed;
    std::optional<int> workers;
    std::optional<int> budget_slots;
    std::optional<uint64_t> budget_configs;
    std::string out;
    std::string format;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + g.out + "'");
    f << text;
}

void apply_globals(const Globals& g) {
    int w = 0;
    if (g.workers)
        w = *g.workers;
    else if (const char* env = std::getenv("GMLAB_WORKERS"))
        w = std::atoi(env);
    if (w <= 0) w = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    set_worker_count(w);
    if (g.budget_slots) {
        if (*g.budget_slots < 1) throw UsageError("--budget-slots must be >= 1");
        default_budget().max_slots = *g.budget_slots;
    }
    if (g.budget_configs) {
        if (*g.budget_configs < 1) throw UsageError("--budget-configs must be >= 1");
        default_budget().max_configurations = *g.budget_configs;
    }
}

OutputFormat format_or(const Globals& g, OutputFormat fallback) {
    return g.format.empty() ? fallback : parse_format(g.format);
}

std::optional<PRule> p_rule_from(const std::optional<double>& p, const std::optional<std::string>& rule) {
    if (p && rule) throw UsageError("give at most one of --p and --p-rule");
    if (rule) return parse_p_rule(*rule);
    if (p) {
        if (!(*p > 0 && *p <= 0.5)) throw UsageError("--p must lie in (0, 1/2]");
        return PRule{PRule::Fixed, *p};
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-matrix norm bounds and matrix concentration checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "master seed (decimal 64-bit); falls back to GMLAB_SEED");
    app.add_option("--workers", g.workers, "worker threads; falls back to GMLAB_WORKERS");
    app.add_option("--budget-slots", g.budget_slots, "max variable slots for exact enumeration");
    app.add_option("--budget-configs", g.budget_configs, "max configurations for exact enumeration");
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--format", g.format, "csv, json or text");

    // shape
    auto* shape_cmd = app.add_subcommand("shape", "parse and print shape files");
    shape_cmd->require_subcommand(1);
    std::string shape_ref;
    auto* shape_check = shape_cmd->add_subcommand("check", "validate a shape file");
    shape_check->add_option("shape", shape_ref, "shape file or built-in name")->required();
    auto* shape_print = shape_cmd->add_subcommand("print", "print a shape in canonical form");
    shape_print->add_option("shape", shape_ref, "shape file or built-in name")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "evaluate a norm-bound formula");
    double bound_n = 0;
    std::optional<double> p, eps, const_C, const_R4;
    std::optional<std::string> p_rule;
    std::optional<int> t;
    bound_cmd->add_option("shape,--shape", shape_ref, "shape file or built-in name")->required();
    bound_cmd->add_option("--n", bound_n, "matrix size parameter")->required();
    bound_cmd->add_option("--p", p, "edge probability; selects the sparse bound");
    bound_cmd->add_option("--p-rule", p_rule, "fixed:<p> or power:<theta> (p = n^-theta)");
    bound_cmd->add_option("--t", t, "moment parameter");
    bound_cmd->add_option("--eps", eps, "failure probability for the high-probability form");
    bound_cmd->add_option("--const-C", const_C, "absolute constant C (default 1)");
    bound_cmd->add_option("--const-R4", const_R4, "absolute constant R4 (default 1)");

    // estimate / scaling
    int samples = 5;
    std::optional<int> est_n;
    std::vector<int> n_list;
    bool timing = false;
    auto add_sweep = [&](CLI::App* c, bool single) {
        c->add_option("shape,--shape", shape_ref, "shape file or built-in name")->required();
        if (single) c->add_option("--n", est_n, "matrix size parameter");
        c->add_option("--n-list", n_list, "comma-separated sizes")->delimiter(',');
        c->add_option("--p", p, "edge probability (default 1/2)");
        c->add_option("--p-rule", p_rule, "fixed:<p> or power:<theta>");
        c->add_option("--samples", samples, "samples per size");
        c->add_flag("--timing", timing, "record wall-clock elapsed_ms (otherwise 0)");
    };
    auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo spectral norms");
    add_sweep(estimate_cmd, true);
    auto* scaling_cmd = app.add_subcommand("scaling", "norms over a size sweep with a fitted exponent");
    add_sweep(scaling_cmd, false);

    // tensornet
    auto* tn_cmd = app.add_subcommand("tensornet", "sum of Kronecker squares of random sign matrices");
    int tn_c = 1, tn_d = 1, tn_t = 2;
    tn_cmd->add_option("--n", est_n, "size parameter");
    tn_cmd->add_option("--n-list", n_list, "comma-separated sizes")->delimiter(',');
    tn_cmd->add_option("--c", tn_c, "number of copies is n^c");
    tn_cmd->add_option("--d", tn_d, "matrix side is n^d");
    tn_cmd->add_option("--samples", samples, "samples per size");
    tn_cmd->add_option("--t", tn_t, "largest Schatten order for the explicit check");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all";
    std::string fault;
    verify_cmd->add_option("--suite", suite, "identities, inequalities, recursion, sparse or all")
        ->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--fault-inject", fault, "test hook")->group("")->check(CLI::IsMember({"kernel"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_globals(g);
        if (shape_cmd->parsed()) {
            const Shape s = load_shape(shape_ref);
            if (shape_print->parsed()) {
                emit(g, print_shape(s));
            } else {
                emit(g, "ok: shape " + s.name + " with " + std::to_string(s.n_vertices()) + " vertices, " +
                            std::to_string(s.n_edges()) + " edges, |U| = " + std::to_string(s.U.size()) +
                            ", |V| = " + std::to_string(s.V.size()) + "\n");
            }
        } else if (bound_cmd->parsed()) {
            BoundRequest req;
            req.shape = load_shape(shape_ref);
            req.n = bound_n;
            req.p = p_rule_from(p, p_rule);
            req.t = t;
            req.eps = eps;
            if (const_C) req.consts.C = *const_C;
            if (const_R4) req.consts.R4 = *const_R4;
            emit(g, cmd_bound(req, format_or(g, OutputFormat::Text)));
        } else if (estimate_cmd->parsed() || scaling_cmd->parsed()) {
            SweepRequest req;
            req.shape = load_shape(shape_ref);
            if (est_n && !n_list.empty()) throw UsageError("give at most one of --n and --n-list");
            req.n_list = est_n ? std::vector<int>{*est_n} : n_list;
            req.p = p_rule_from(p, p_rule).value_or(PRule{PRule::Fixed, 0.5});
            req.samples = samples;
            req.seed = resolve_seed(g.seed);
            req.timing = timing;
            const OutputFormat fmt = format_or(g, OutputFormat::Csv);
            emit(g, estimate_cmd->parsed() ? cmd_estimate(req, fmt) : cmd_scaling(req, fmt));
        } else if (tn_cmd->parsed()) {
            TensorNetRequest req;
            if (est_n && !n_list.empty()) throw UsageError("give at most one of --n and --n-list");
            req.n_list = est_n ? std::vector<int>{*est_n} : (n_list.empty() ? std::vector<int>{8, 16, 32, 64} : n_list);
            req.c = tn_c;
            req.d = tn_d;
            req.samples = samples;
            req.seed = resolve_seed(g.seed);
            req.max_t = tn_t;
            emit(g, cmd_tensornet(req, format_or(g, OutputFormat::Text)));
        } else if (verify_cmd->parsed()) {
            if (format_or(g, OutputFormat::Json) != OutputFormat::Json) throw UsageError("verify writes JSON only");
            if (fault == "kernel") set_kernel_fault_injection(true);
            const SuiteReport rep = run_suite(suite, resolve_seed(g.seed));
            emit(g, rep.to_json());
            if (!rep.holds()) {
                std::string names;
                for (auto& f : rep.failing()) names += (names.empty() ? "" : ", ") + f;
                std::cerr << "gmlab: verify failed: " << names << "\n";
                return kExitRuntime;
            }
        }
    } catch (const ShapeParseError& e) {
        std::cerr << "gmlab: " << shape_ref << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "gmlab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gmlab: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "gmlab: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
