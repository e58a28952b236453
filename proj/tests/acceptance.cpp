#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "entvar/cli.hpp"
#include "entvar/identities.hpp"
#include "entvar/laguerre.hpp"
#include "entvar/moments.hpp"
#include "entvar/montecarlo.hpp"

using namespace entvar;

namespace {

// Pinned tolerances and budgets.
constexpr long kTheoremMaxN = 15;
constexpr long kIdentityMax = 20;
constexpr long kConsolidationMaxN = 12;
constexpr long kTableMaxN = 12;
constexpr long kOracleExactMaxN = 8;
constexpr long kOracleQuadMaxN = 6;
constexpr double kQuadratureRtol = 1e-6;
constexpr std::size_t kSamples = 1000000;
constexpr std::uint64_t kSeed = 20261017;
constexpr double kTraceIdentityTol = 1e-10;
constexpr double kUnitTraceTol = 1e-12;
constexpr double kBudgetTheorem = 30.0;
constexpr double kBudgetIdentities = 60.0;
constexpr double kBudgetOracles = 300.0;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::pair<long, long>> kMcConfigs{{1, 1}, {2, 2}, {2, 3}, {3, 4}};

bool same_estimate(const Estimate& a, const Estimate& b) {
    return a.value == b.value && a.standard_error == b.standard_error;
}

bool same_report(const EstimatorReport& a, const EstimatorReport& b) {
    return same_estimate(a.mean_S, b.mean_S) && same_estimate(a.var_S, b.var_S) && same_estimate(a.E_T, b.E_T) &&
           same_estimate(a.E_T2, b.E_T2) && same_estimate(a.mean_r, b.mean_r) && same_estimate(a.var_r, b.var_r) &&
           a.corr_rS == b.corr_rS && a.audit.max_trace_identity_error == b.audit.max_trace_identity_error &&
           a.audit.max_unit_trace_error == b.audit.max_unit_trace_error && a.audit.min_S == b.audit.min_S &&
           a.audit.max_S == b.audit.max_S && a.audit.samples == b.audit.samples;
}

std::string cli_mc(const char* threads) {
    const char* argv[] = {"entvar", "mc",   "--m",       "2",   "--n",       "2",    "--samples",
                          "200000", "--seed", "42", "--threads", threads};
    std::ostringstream out, err;
    run_cli(static_cast<int>(std::size(argv)), argv, out, err);
    return out.str();
}

}  // namespace

int main() {
    report(1, "E[T^2] assembly and variance formula, exact, 1 <= m <= n <= 15", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t pairs = 0, bad = 0;
        for (long n = 1; n <= kTheoremMaxN; ++n)
            for (long m = 1; m <= n; ++m) {
                const Dims d(m, n);
                ++pairs;
                if (!(assemble_E_T2(d) == induced_T2_target(d)) || !(variance_S_via_relation(d) == vpo_variance(d))) {
                    ++bad;
                    std::printf("    mismatch at (m,n)=(%ld,%ld)\n", m, n);
                }
            }
        const double secs = elapsed_since(t0);
        return Outcome{bad == 0 && secs < kBudgetTheorem,
                       std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches"};
    });

    report(2, "appendix identity suite, exact, parameters up to 20", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const IdentitySweep sweep = sweep_identities(kIdentityMax);
        std::size_t required = 0;
        for (const auto& r : sweep.results) {
            if (r.id != IdentityId::HYP3F2) ++required;
            if (!r.equal) {
                std::printf("    %s mismatch at (%s)=(%ld,%ld)\n", to_string(r.id).c_str(), r.parameter_names.c_str(),
                            r.first, r.second);
            }
        }
        const double secs = elapsed_since(t0);
        return Outcome{sweep.all_equal() && secs < kBudgetIdentities,
                       std::to_string(sweep.results.size()) + " cases (" + std::to_string(required) +
                           " from A1-A12/WY/MILGRAM/HYP4F3), " + std::to_string(sweep.failures()) + " mismatches, " +
                           std::to_string(sweep.skipped) + " out-of-domain tuples skipped"};
    });

    report(3, "consolidated I_A/I_B and coefficient differences, exact, 3 <= m < n <= 12", [] {
        std::size_t pairs = 0, bad = 0;
        for (long n = 4; n <= kConsolidationMaxN; ++n)
            for (long m = 3; m < n; ++m) {
                const Dims d(m, n);
                const auto c = consolidation_coefficients(m, n);
                ++pairs;
                const bool ok = IA_consolidated(d) == IA_closed(d) && IB_consolidated(d) == IB_closed(d) &&
                                (c.a2 - c.b5).is_zero() &&
                                c.a1 - c.b4 == BigRational(m * (n - m) * (n - m + 1) * (2 * n + m + 1)) &&
                                c.a3 - c.b6 == BigRational(m * (m + 1) * (n - m) * (n - m + 1), 2);
                if (!ok) {
                    ++bad;
                    std::printf("    mismatch at (m,n)=(%ld,%ld)\n", m, n);
                }
            }
        return Outcome{bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches"};
    });

    report(4, "Table I rows m=1, m=2, m=n, exact, n <= 12", [] {
        std::size_t cases = 0, bad = 0;
        auto check = [&](const Dims& d, TableRow row) {
            const SpecialCase sc = special_case(d, row);
            ++cases;
            if (!(IA_closed(d) == sc.IA) || !(IB_closed(d) == sc.IB) || !(assemble_E_T2(d) == sc.E_T2)) {
                ++bad;
                std::printf("    mismatch at (m,n)=(%ld,%ld)\n", d.m(), d.n());
            }
        };
        for (long n = 1; n <= kTableMaxN; ++n) {
            check(Dims(1, n), TableRow::MEqualsOne);
            if (n >= 2) check(Dims(2, n), TableRow::MEqualsTwo);
            check(Dims(n, n), TableRow::MEqualsN);
        }
        return Outcome{bad == 0, std::to_string(cases) + " row instances, " + std::to_string(bad) + " mismatches"};
    });

    report(5, "integration oracles: symbolic exact (n <= 8), quadrature 1e-6 relative (n <= 6)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        std::size_t exact_bad = 0, quad_bad = 0;
        double worst = 0.0;
        for (long n = 1; n <= kOracleExactMaxN; ++n)
            for (long m = 1; m <= n; ++m) {
                const Dims d(m, n);
                if (!(oracle_IA(d) == IA_closed(d)) || !(oracle_IB(d) == IB_closed(d))) {
                    ++exact_bad;
                    std::printf("    symbolic mismatch at (m,n)=(%ld,%ld)\n", m, n);
                }
            }
        for (long n = 1; n <= kOracleQuadMaxN; ++n)
            for (long m = 1; m <= n; ++m) {
                const Dims d(m, n);
                const KernelSpec spec(d);
                const auto qa = quadrature_IA(spec);
                const auto qb = quadrature_IB(spec);
                const double ra = std::abs(qa.value - IA_closed(d).to_double()) / std::abs(IA_closed(d).to_double());
                const double rb = std::abs(qb.value - IB_closed(d).to_double()) / std::abs(IB_closed(d).to_double());
                worst = std::max({worst, ra, rb});
                if (!qa.converged || !qb.converged || ra > kQuadratureRtol || rb > kQuadratureRtol) {
                    ++quad_bad;
                    std::printf("    quadrature mismatch at (m,n)=(%ld,%ld): %.3g %.3g\n", m, n, ra, rb);
                }
            }
        const double secs = elapsed_since(t0);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu symbolic and %zu quadrature mismatches, worst relative deviation %.2e",
                      exact_bad, quad_bad, worst);
        return Outcome{exact_bad == 0 && quad_bad == 0 && secs < kBudgetOracles, buf};
    });

    std::vector<EstimatorReport> single_threaded;
    report(6, "Monte Carlo at N = 1e6, seed 20261017", [&] {
        bool ok = true;
        std::string detail;
        for (auto [m, n] : kMcConfigs) {
            const EstimatorReport r = estimate_moments(Dims(m, n), kSamples, kSeed, 1);
            single_threaded.push_back(r);
            double worst = 0.0;
            for (const auto& c : compare_with_closed_forms(r)) {
                if (!c.pass) {
                    ok = false;
                    std::printf("    (%ld,%ld) %s: estimate %.10g, prediction %.10g, z %.3f\n", m, n, c.name.c_str(),
                                c.estimate, c.prediction, c.z);
                }
                worst = std::max(worst, std::abs(c.z) / c.z_limit);
            }
            char buf[80];
            std::snprintf(buf, sizeof buf, "%s(%ld,%ld) max |z|/limit %.2f", detail.empty() ? "" : "; ", m, n, worst);
            detail += buf;
        }
        return Outcome{ok, detail};
    });

    report(7, "per-sample invariants on every draw of criterion 6", [&] {
        if (single_threaded.size() != kMcConfigs.size()) return Outcome{false, "criterion 6 did not produce samples"};
        bool ok = true;
        double identity = 0.0, trace = 0.0;
        std::size_t samples = 0;
        for (const auto& r : single_threaded) {
            const auto& a = r.audit;
            samples += a.samples;
            identity = std::max(identity, a.max_trace_identity_error);
            trace = std::max(trace, a.max_unit_trace_error);
            const double ln_m = std::log(static_cast<double>(r.dims.m()));
            ok = ok && a.max_trace_identity_error <= kTraceIdentityTol && a.max_unit_trace_error <= kUnitTraceTol &&
                 a.min_S >= 0.0 && a.max_S <= ln_m + 1e-12 && a.ordering_violations == 0;
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu samples, max |r ln r - rS - T| %.2e, max |sum lambda - 1| %.2e", samples,
                      identity, trace);
        return Outcome{ok, buf};
    });

    report(8, "determinism across thread counts", [&] {
        if (single_threaded.size() != kMcConfigs.size()) return Outcome{false, "criterion 6 did not produce reports"};
        bool ok = true;
        for (std::size_t i = 0; i < kMcConfigs.size(); ++i) {
            const auto [m, n] = kMcConfigs[i];
            const EstimatorReport r = estimate_moments(Dims(m, n), kSamples, kSeed, 4);
            ok = ok && same_report(r, single_threaded[i]);
        }
        const std::string one = cli_mc("1");
        const bool cli_same = !one.empty() && one == cli_mc("8");
        return Outcome{ok && cli_same, std::string("estimator reports ") + (ok ? "identical" : "differ") +
                                           " for 1 vs 4 threads; CLI JSON " + (cli_same ? "byte-identical" : "differs") +
                                           " for 1 vs 8 threads"};
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
