#include "entvar/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "entvar/dims.hpp"
#include "entvar/identities.hpp"
#include "entvar/laguerre.hpp"
#include "entvar/moments.hpp"
#include "entvar/montecarlo.hpp"
#include "entvar/report.hpp"

namespace entvar {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    long m = 0;
    long n = 0;
    long max_n = 15;
    long max = 20;
    long consolidation_max_n = 12;
    std::size_t samples = 1000000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string format = "json";
    std::string out_path;
    std::string method = "symbolic";
    double rtol = 1e-6;
    double z_limit = 4.0;
};

Dims checked_dims(long m, long n) {
    try {
        return Dims(m, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_bound(long bound, const char* flag) {
    if (bound < 1 || bound > kMaxSweepBound) {
        throw UsageError(std::string(flag) + " must lie in [1, " + std::to_string(kMaxSweepBound) + "]");
    }
}

unsigned default_threads() {
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) throw UsageError(std::string(kThreadsEnv) + " is not a thread count");
    return static_cast<unsigned>(v);
}

Report cmd_moments(const RunConfig& cfg) {
    const Dims d = checked_dims(cfg.m, cfg.n);
    Report r;
    r.config = {{"subcommand", "moments"}, {"m", cfg.m}, {"n", cfg.n}};
    r.results.push_back({{"quantity", "mean_S"}, {"ensemble", "fixed_trace"}, {"exact", exact_to_json(page_mean(d))}});
    r.results.push_back({{"quantity", "var_S"}, {"ensemble", "fixed_trace"}, {"exact", exact_to_json(vpo_variance(d))}});
    r.summary = {{"pass", true}, {"checked", 2}, {"failed", 0}};
    return r;
}

Report cmd_verify_conjecture(const RunConfig& cfg, std::ostream& err) {
    check_bound(cfg.max_n, "--max-n");
    Report r;
    r.config = {{"subcommand", "verify conjecture"}, {"max_n", cfg.max_n}};
    std::size_t failed = 0;
    for (long n = 1; n <= cfg.max_n; ++n) {
        for (long m = 1; m <= n; ++m) {
            const Dims d(m, n);
            const SymExpr assembled = assemble_E_T2(d), target = induced_T2_target(d);
            const SymExpr via_relation = variance_S_via_relation(d), closed = vpo_variance(d);
            json row = {{"m", m}, {"n", n}, {"E_T2_equal", assembled == target}, {"variance_equal", via_relation == closed}};
            if (!(assembled == target) || !(via_relation == closed)) {
                ++failed;
                row["E_T2_assembled"] = assembled.to_string();
                row["E_T2_target"] = target.to_string();
                row["variance_via_relation"] = via_relation.to_string();
                row["variance_closed"] = closed.to_string();
                err << "conjecture mismatch at (m,n)=(" << m << "," << n << "): " << assembled.to_string() << " vs "
                    << target.to_string() << "; " << via_relation.to_string() << " vs " << closed.to_string() << '\n';
            }
            r.results.push_back(std::move(row));
        }
    }
    r.summary = {{"pass", failed == 0}, {"checked", r.results.size()}, {"failed", failed}};
    return r;
}

Report cmd_verify_identities(const RunConfig& cfg, std::ostream& err) {
    check_bound(cfg.max, "--max");
    Report r;
    r.config = {{"subcommand", "verify identities"}, {"max", cfg.max}};
    const IdentitySweep sweep = sweep_identities(cfg.max);
    for (const auto& c : sweep.results) {
        json row = {{"id", to_string(c.id)}, {"parameters", c.parameter_names}, {"first", c.first},
                    {"second", c.second}, {"equal", c.equal}};
        if (!c.equal) {
            row["lhs"] = c.lhs.to_string();
            row["rhs"] = c.rhs.to_string();
            err << to_string(c.id) << " mismatch at (" << c.parameter_names << ")=(" << c.first << "," << c.second
                << "): " << c.lhs.to_string() << " vs " << c.rhs.to_string() << '\n';
        }
        r.results.push_back(std::move(row));
    }
    r.summary = {{"pass", sweep.all_equal()},
                 {"checked", sweep.results.size()},
                 {"failed", sweep.failures()},
                 {"skipped_out_of_domain", sweep.skipped}};
    return r;
}

Report cmd_verify_consolidation(const RunConfig& cfg, std::ostream& err) {
    check_bound(cfg.consolidation_max_n, "--max-n");
    Report r;
    r.config = {{"subcommand", "verify consolidation"}, {"max_n", cfg.consolidation_max_n}};
    std::size_t failed = 0;
    for (long n = 4; n <= cfg.consolidation_max_n; ++n) {
        for (long m = 3; m < n; ++m) {
            const Dims d(m, n);
            const auto c = consolidation_coefficients(m, n);
            const bool ia = IA_consolidated(d) == IA_closed(d);
            const bool ib = IB_consolidated(d) == IB_closed(d);
            const bool d25 = (c.a2 - c.b5).is_zero();
            const bool d14 = c.a1 - c.b4 == BigRational(m * (n - m) * (n - m + 1) * (2 * n + m + 1));
            const bool d36 = c.a3 - c.b6 == BigRational(m * (m + 1) * (n - m) * (n - m + 1), 2);
            const bool ok = ia && ib && d25 && d14 && d36;
            if (!ok) {
                ++failed;
                err << "consolidation mismatch at (m,n)=(" << m << "," << n << ")\n";
            }
            r.results.push_back({{"m", m},
                                 {"n", n},
                                 {"IA_equal", ia},
                                 {"IB_equal", ib},
                                 {"a2_minus_b5_zero", d25},
                                 {"a1_minus_b4_matches", d14},
                                 {"a3_minus_b6_matches", d36}});
        }
    }
    r.summary = {{"pass", failed == 0}, {"checked", r.results.size()}, {"failed", failed}};
    return r;
}

Report cmd_oracle(const RunConfig& cfg, bool is_ia, std::ostream& err) {
    const Dims d = checked_dims(cfg.m, cfg.n);
    if (d.n() > 8) throw UsageError("oracle requires n <= 8");
    const char* quantity = is_ia ? "IA" : "IB";
    const SymExpr closed = is_ia ? IA_closed(d) : IB_closed(d);
    const double closed_value = closed.to_double();

    Report r;
    r.config = {{"subcommand", std::string("oracle ") + (is_ia ? "ia" : "ib")},
                {"m", cfg.m},
                {"n", cfg.n},
                {"method", cfg.method}};
    json row = {{"quantity", quantity}, {"method", cfg.method}, {"closed_form", exact_to_json(closed)}};
    bool pass = false;
    if (cfg.method == "symbolic") {
        const SymExpr oracle = is_ia ? oracle_IA(d) : oracle_IB(d);
        const double dev = std::abs(oracle.to_double() - closed_value);
        pass = oracle == closed;
        row["oracle"] = exact_to_json(oracle);
        row["exact_match"] = pass;
        row["abs_deviation"] = dev;
        row["rel_deviation"] = dev / std::abs(closed_value);
    } else {
        r.config["rtol"] = cfg.rtol;
        const KernelSpec spec(d);
        const QuadratureResult q = is_ia ? quadrature_IA(spec) : quadrature_IB(spec);
        const double dev = std::abs(q.value - closed_value);
        const double rel = dev / std::abs(closed_value);
        pass = q.converged && rel <= cfg.rtol;
        row["oracle"] = q.value;
        row["error_estimate"] = q.error_estimate;
        row["refinements"] = q.refinements;
        row["nodes_per_axis"] = q.nodes_per_axis;
        row["converged"] = q.converged;
        row["abs_deviation"] = dev;
        row["rel_deviation"] = rel;
        if (!q.converged) {
            err << "quadrature did not converge; achieved error estimate " << format_double(q.error_estimate) << '\n';
        }
    }
    row["pass"] = pass;
    if (!pass) err << quantity << " oracle disagrees with the closed form at (m,n)=(" << cfg.m << "," << cfg.n << ")\n";
    r.results.push_back(std::move(row));
    r.summary = {{"pass", pass}, {"checked", 1}, {"failed", pass ? 0 : 1}};
    return r;
}

Report cmd_mc(const RunConfig& cfg, std::ostream& err) {
    const Dims d = checked_dims(cfg.m, cfg.n);
    if (cfg.samples < 1000) throw UsageError("--samples must be at least 1000");
    if (!(cfg.z_limit > 0.0)) throw UsageError("--z-limit must be positive");
    // The thread count is deliberately absent: it never changes the report.
    Report r;
    r.config = {{"subcommand", "mc"}, {"m", cfg.m},          {"n", cfg.n},
                {"samples", cfg.samples}, {"seed", cfg.seed}, {"z_limit", cfg.z_limit},
                {"chunk_size", kChunkSize}};
    const EstimatorReport est = estimate_moments(d, cfg.samples, cfg.seed, cfg.threads);
    std::size_t failed = 0;
    for (const auto& c : compare_with_closed_forms(est, MonteCarloTolerances::uniform(cfg.z_limit))) {
        if (!c.pass) {
            ++failed;
            err << "mc " << c.name << ": estimate " << format_double(c.estimate) << " vs prediction "
                << format_double(c.prediction) << ", z = " << format_double(c.z) << '\n';
        }
        r.results.push_back({{"quantity", c.name},
                             {"estimate", c.estimate},
                             {"standard_error", c.standard_error},
                             {"prediction", c.prediction},
                             {"z", c.z},
                             {"pass", c.pass}});
    }
    const auto& a = est.audit;
    const bool invariants = a.max_trace_identity_error <= 1e-10 && a.max_unit_trace_error <= 1e-12 &&
                            a.min_S >= 0.0 && a.max_S <= std::log(static_cast<double>(cfg.m)) + 1e-12 &&
                            a.ordering_violations == 0;
    if (!invariants) err << "mc: per-sample invariant violated\n";
    r.summary = {{"pass", failed == 0 && invariants},
                 {"checked", r.results.size()},
                 {"failed", failed},
                 {"invariants",
                  {{"pass", invariants},
                   {"samples", a.samples},
                   {"max_trace_identity_error", a.max_trace_identity_error},
                   {"max_unit_trace_error", a.max_unit_trace_error},
                   {"min_S", a.min_S},
                   {"max_S", a.max_S},
                   {"ordering_violations", a.ordering_violations}}}};
    return r;
}

void add_dims(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--m", cfg.m, "Smaller subsystem dimension")->required();
    sub->add_option("--n", cfg.n, "Larger subsystem dimension")->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact and Monte Carlo moments of the entanglement entropy of random pure states", "entvar"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out_path, "Write the report to this path instead of stdout");

    auto* moments = app.add_subcommand("moments", "Exact mean and variance of the entanglement entropy");
    add_dims(moments, cfg);

    auto* verify = app.add_subcommand("verify", "Exhaustive exact sweeps");
    verify->require_subcommand(1);
    auto* conjecture = verify->add_subcommand("conjecture", "E[T^2] assembly and the variance formula");
    conjecture->add_option("--max-n", cfg.max_n, "Check all 1 <= m <= n <= max-n");
    auto* identities = verify->add_subcommand("identities", "Finite-sum identity suite");
    identities->add_option("--max", cfg.max, "Parameter bound for every identity");
    auto* consolidation = verify->add_subcommand("consolidation", "Consolidated versus general I_A and I_B");
    consolidation->add_option("--max-n", cfg.consolidation_max_n, "Check all 3 <= m < n <= max-n");

    auto* oracle = app.add_subcommand("oracle", "Cross-check I_A or I_B against an independent integration");
    oracle->require_subcommand(1);
    auto* ia = oracle->add_subcommand("ia", "One-point integral I_A");
    auto* ib = oracle->add_subcommand("ib", "Two-point integral I_B");
    for (auto* sub : {ia, ib}) {
        add_dims(sub, cfg);
        sub->add_option("--method", cfg.method, "Oracle")->check(CLI::IsMember({"symbolic", "quadrature"}));
        sub->add_option("--rtol", cfg.rtol, "Relative tolerance for quadrature");
    }

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates against the closed forms");
    add_dims(mc, cfg);
    mc->add_option("--samples", cfg.samples, "Number of draws");
    mc->add_option("--seed", cfg.seed, "Base seed");
    mc->add_option("--threads", cfg.threads, "Worker threads (0: all cores; default from ENTVAR_THREADS)");
    mc->add_option("--z-limit", cfg.z_limit, "Pass threshold for |z|");

    try {
        cfg.threads = default_threads();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    Report report;
    try {
        if (moments->parsed()) {
            report = cmd_moments(cfg);
        } else if (conjecture->parsed()) {
            report = cmd_verify_conjecture(cfg, err);
        } else if (identities->parsed()) {
            report = cmd_verify_identities(cfg, err);
        } else if (consolidation->parsed()) {
            report = cmd_verify_consolidation(cfg, err);
        } else if (ia->parsed() || ib->parsed()) {
            report = cmd_oracle(cfg, ia->parsed(), err);
        } else {
            report = cmd_mc(cfg, err);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    report.config["format"] = cfg.format;

    const std::string text = cfg.format == "csv" ? emit_csv(report) : emit_json(report.document()) + "\n";
    if (cfg.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file || !(file << text)) {
            err << "error: cannot write " << cfg.out_path << '\n';
            return kExitUsage;
        }
    }
    return report.summary.value("pass", false) ? kExitPass : kExitVerificationFailure;
}

}  // namespace entvar
