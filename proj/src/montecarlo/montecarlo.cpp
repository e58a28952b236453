#include "entvar/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "entvar/moments.hpp"

namespace entvar {

ComplexMatrix ComplexMatrix::gram() const {
    ComplexMatrix w(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < rows_; ++j) {
            std::complex<double> s = 0.0;
            for (std::size_t k = 0; k < cols_; ++k) s += (*this)(i, k) * std::conj((*this)(j, k));
            w(i, j) = s;
            w(j, i) = std::conj(s);
        }
        w(i, i) = w(i, i).real();
    }
    return w;
}

NormalSource::NormalSource(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double NormalSource::uniform_open() {
    // 53 random bits mapped to (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

ComplexMatrix sample_ginibre(const Dims& d, NormalSource& rng) {
    const auto m = static_cast<std::size_t>(d.m());
    const auto n = static_cast<std::size_t>(d.n());
    ComplexMatrix y(m, n);
    const double scale = std::sqrt(0.5);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.next();
            const double im = rng.next();
            y(i, j) = {scale * re, scale * im};
        }
    }
    return y;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    const std::size_t m = h.rows();
    if (h.cols() != m) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    if (m > kMaxEigenDimension) throw std::invalid_argument("hermitian_eigenvalues: dimension exceeds 32");
    if (m == 0) return {};

    double norm2 = 0.0;
    double asym2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            norm2 += std::norm(h(i, j));
            asym2 += std::norm(h(i, j) - std::conj(h(j, i)));
        }
    }
    const double norm = std::sqrt(norm2);
    if (!std::isfinite(norm)) throw std::invalid_argument("hermitian_eigenvalues: non-finite entry");
    if (std::sqrt(asym2) > 1e-12 * std::max(norm, 1.0)) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    }

    ComplexMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        a(i, i) = a(i, i).real();
    }

    const double target = 1e-13 * norm;
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    while (off_norm() >= target && norm > 0.0) {
        if (++sweep > kMaxSweeps) throw EigensolverFailure("Jacobi iteration did not converge");
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                // Rotate the phase of row/column q so that a(p,q) becomes real.
                const std::complex<double> w = a(p, q) / mag;
                for (std::size_t k = 0; k < m; ++k) {
                    a(k, q) *= std::conj(w);
                    a(q, k) *= w;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const auto akp = a(k, p);
                    const auto akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const auto apk = a(p, k);
                    const auto aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> eig(m);
    for (std::size_t i = 0; i < m; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

SpectralSample draw_sample(const Dims& d, NormalSource& rng) {
    const ComplexMatrix y = sample_ginibre(d, rng);
    SpectralSample s;
    s.theta = hermitian_eigenvalues(y.gram());
    if (s.theta.back() <= 0.0) throw EigensolverFailure("non-positive Wishart eigenvalue");
    s.r = 0.0;
    for (double t : s.theta) s.r += t;
    s.lambda.reserve(s.theta.size());
    s.S = 0.0;
    s.T = 0.0;
    for (double t : s.theta) {
        const double l = t / s.r;
        s.lambda.push_back(l);
        s.S -= l * std::log(l);
        s.T += t * std::log(t);
    }
    return s;
}

namespace {

/// Running central moments up to fourth order, mergeable pairwise.
struct MomentAccumulator {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;

    void add(double x) {
        const double n1 = n;
        n += 1.0;
        const double delta = x - mean;
        const double dn = delta / n;
        const double dn2 = dn * dn;
        const double term1 = delta * dn * n1;
        mean += dn;
        m4 += term1 * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
        m3 += term1 * dn * (n - 2.0) - 3.0 * dn * m2;
        m2 += term1;
    }

    void merge(const MomentAccumulator& b) {
        if (b.n == 0.0) return;
        if (n == 0.0) {
            *this = b;
            return;
        }
        const double na = n, nb = b.n, nt = na + nb;
        const double d = b.mean - mean;
        const double d2 = d * d;
        const double nm4 = m4 + b.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
                           6.0 * d2 * (na * na * b.m2 + nb * nb * m2) / (nt * nt) + 4.0 * d * (na * b.m3 - nb * m3) / nt;
        const double nm3 = m3 + b.m3 + d2 * d * na * nb * (na - nb) / (nt * nt) + 3.0 * d * (na * b.m2 - nb * m2) / nt;
        m2 += b.m2 + d2 * na * nb / nt;
        m3 = nm3;
        m4 = nm4;
        mean += d * nb / nt;
        n = nt;
    }

    double sample_variance() const { return m2 / (n - 1.0); }

    Estimate mean_estimate() const { return {mean, std::sqrt(sample_variance() / n)}; }

    /// Sample variance with its delta-method standard error from the fourth central moment.
    Estimate variance_estimate() const {
        const double s2 = sample_variance();
        const double mu2 = m2 / n;
        const double mu4 = m4 / n;
        const double v = (mu4 - mu2 * mu2 * (n - 3.0) / (n - 1.0)) / n;
        return {s2, std::sqrt(std::max(v, 0.0))};
    }
};

struct CoMoment {
    double n = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double c = 0.0;

    void add(double x, double y) {
        n += 1.0;
        const double dx = x - mean_x;
        mean_x += dx / n;
        mean_y += (y - mean_y) / n;
        c += dx * (y - mean_y);
    }

    void merge(const CoMoment& b) {
        if (b.n == 0.0) return;
        if (n == 0.0) {
            *this = b;
            return;
        }
        const double nt = n + b.n;
        c += b.c + (b.mean_x - mean_x) * (b.mean_y - mean_y) * n * b.n / nt;
        mean_x += (b.mean_x - mean_x) * b.n / nt;
        mean_y += (b.mean_y - mean_y) * b.n / nt;
        n = nt;
    }
};

struct ChunkStats {
    MomentAccumulator S, T, T2, r;
    CoMoment rS;
    InvariantAudit audit;

    void add(const SpectralSample& s) {
        S.add(s.S);
        T.add(s.T);
        T2.add(s.T * s.T);
        r.add(s.r);
        rS.add(s.r, s.S);

        double sum_lambda = 0.0;
        bool ordered = s.r > 0.0;
        for (std::size_t i = 0; i < s.lambda.size(); ++i) {
            sum_lambda += s.lambda[i];
            if (s.theta[i] <= 0.0 || s.lambda[i] <= 0.0) ordered = false;
            if (i > 0 && (s.theta[i] > s.theta[i - 1] || s.lambda[i] > s.lambda[i - 1])) ordered = false;
        }
        const double identity = std::abs(s.r * std::log(s.r) - s.r * s.S - s.T);
        if (audit.samples == 0) {
            audit.min_S = s.S;
            audit.max_S = s.S;
        }
        ++audit.samples;
        audit.max_trace_identity_error = std::max(audit.max_trace_identity_error, identity);
        audit.max_unit_trace_error = std::max(audit.max_unit_trace_error, std::abs(sum_lambda - 1.0));
        audit.min_S = std::min(audit.min_S, s.S);
        audit.max_S = std::max(audit.max_S, s.S);
        if (!ordered) ++audit.ordering_violations;
    }

    void merge(const ChunkStats& b) {
        S.merge(b.S);
        T.merge(b.T);
        T2.merge(b.T2);
        r.merge(b.r);
        rS.merge(b.rS);
        if (b.audit.samples == 0) return;
        if (audit.samples == 0) {
            audit = b.audit;
            return;
        }
        audit.samples += b.audit.samples;
        audit.max_trace_identity_error = std::max(audit.max_trace_identity_error, b.audit.max_trace_identity_error);
        audit.max_unit_trace_error = std::max(audit.max_unit_trace_error, b.audit.max_unit_trace_error);
        audit.min_S = std::min(audit.min_S, b.audit.min_S);
        audit.max_S = std::max(audit.max_S, b.audit.max_S);
        audit.ordering_violations += b.audit.ordering_violations;
    }
};

ChunkStats run_chunk(const Dims& d, std::uint64_t seed, std::size_t chunk, std::size_t count) {
    NormalSource rng(seed, chunk);
    ChunkStats stats;
    for (std::size_t i = 0; i < count; ++i) stats.add(draw_sample(d, rng));
    return stats;
}

double z_score(double estimate, double se, double prediction) {
    const double diff = estimate - prediction;
    if (se > 0.0) return diff / se;
    return std::abs(diff) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

EstimatorReport estimate_moments(const Dims& d, std::size_t samples, std::uint64_t seed, unsigned threads) {
    if (samples < 1000) throw std::invalid_argument("estimate_moments requires at least 1000 samples");
    const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkStats> per_chunk(chunks);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t c = next++; c < chunks; c = next++) {
                const std::size_t count = std::min(kChunkSize, samples - c * kChunkSize);
                per_chunk[c] = run_chunk(d, seed, c, count);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ChunkStats total;
    for (const auto& c : per_chunk) total.merge(c);

    EstimatorReport report{d, samples, seed, {}, {}, {}, {}, {}, {}, 0.0, total.audit};
    report.mean_S = total.S.mean_estimate();
    report.var_S = total.S.variance_estimate();
    report.E_T = total.T.mean_estimate();
    report.E_T2 = total.T2.mean_estimate();
    report.mean_r = total.r.mean_estimate();
    report.var_r = total.r.variance_estimate();
    const double denom = std::sqrt(total.r.m2 * total.S.m2);
    report.corr_rS = denom > 0.0 ? total.rS.c / denom : 0.0;
    return report;
}

MonteCarloTolerances MonteCarloTolerances::uniform(double z) { return {z, z, z, z, z, z, z}; }

std::vector<MonteCarloCheck> compare_with_closed_forms(const EstimatorReport& report, const MonteCarloTolerances& tol) {
    const Dims& d = report.dims;
    const double mn = static_cast<double>(d.mn());
    std::vector<MonteCarloCheck> checks;
    auto add = [&](const char* name, const Estimate& e, double prediction, double limit) {
        const double z = z_score(e.value, e.standard_error, prediction);
        checks.push_back({name, e.value, e.standard_error, prediction, z, limit, std::abs(z) < limit});
    };
    add("mean_S", report.mean_S, page_mean(d).to_double(), tol.mean_S);
    add("var_S", report.var_S, vpo_variance(d).to_double(), tol.var_S);
    add("E_T", report.E_T, induced_T_mean(d).to_double(), tol.E_T);
    add("E_T2", report.E_T2, induced_T2_target(d).to_double(), tol.E_T2);
    add("mean_r", report.mean_r, mn, tol.mean_r);
    add("var_r", report.var_r, mn, tol.var_r);

    // Reported as a z-score against the 1/sqrt(N) null standard error.
    const double se = 1.0 / std::sqrt(static_cast<double>(report.samples));
    const double z = report.corr_rS / se;
    checks.push_back({"corr_rS", report.corr_rS, se, 0.0, z, tol.corr_factor, std::abs(z) < tol.corr_factor});
    return checks;
}

}  // namespace entvar
