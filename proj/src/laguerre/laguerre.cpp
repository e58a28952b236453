#include "entvar/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "entvar/polygamma.hpp"

namespace entvar {

// ---------------------------------------------------------------- ExactPoly

ExactPoly::ExactPoly(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

ExactPoly ExactPoly::monomial(int power, BigRational coefficient) {
    if (power < 0) throw std::invalid_argument("negative monomial power");
    std::vector<BigRational> c(static_cast<std::size_t>(power) + 1);
    c.back() = std::move(coefficient);
    return ExactPoly(std::move(c));
}

void ExactPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

ExactPoly& ExactPoly::operator*=(const BigRational& scalar) {
    for (auto& c : coeffs_) c *= scalar;
    trim();
    return *this;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return ExactPoly(std::move(c));
}

double ExactPoly::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

// ------------------------------------------------------ Laguerre polynomials

BigRational generalized_binomial(long a, long j) {
    if (j < 0) return 0;
    BigRational num = 1;
    for (long i = 0; i < j; ++i) num *= BigRational(a - i);
    return num / BigRational::factorial(j);
}

LaguerrePoly LaguerrePoly::make(int degree, int alpha) {
    if (alpha < 0) throw std::domain_error("Laguerre parameter must be non-negative");
    if (degree < 0) return {degree, alpha, ExactPoly{}};
    std::vector<BigRational> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) {
        BigRational term = generalized_binomial(alpha + degree, degree - i) / BigRational::factorial(i);
        c[static_cast<std::size_t>(i)] = (i % 2 == 0) ? term : -term;
    }
    return {degree, alpha, ExactPoly(std::move(c))};
}

double laguerre_eval(int k, int alpha, double x) {
    if (k < 0) return 0.0;
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// -------------------------------------------------------------------- kernel

KernelSpec::KernelSpec(Dims d) : dims(d), normalization(1) {
    for (long i = 1; i <= d.m(); ++i) {
        normalization *= BigRational::factorial(d.n() - i) * BigRational::factorial(i - 1);
    }
}

namespace {

constexpr double kLogUnderflow = -745.0;

/// log of sqrt(e^{-x-y} (xy)^alpha); -inf when the weight vanishes.
double log_half_weight(long alpha, double x, double y) {
    double v = -0.5 * (x + y);
    if (alpha > 0) {
        if (x == 0.0 || y == 0.0) return -INFINITY;
        v += 0.5 * static_cast<double>(alpha) * (std::log(x) + std::log(y));
    }
    return v;
}

}  // namespace

double kernel_value(const KernelSpec& spec, double x, double y) {
    const long a = spec.alpha();
    const int alpha = static_cast<int>(a);
    const double log_pref = log_half_weight(a, x, y);
    // Past this point the weight underflows while the polynomials may overflow.
    if (log_pref < kLogUnderflow) return 0.0;
    // C_k(x) C_k(y) / (k! (a+k)!) = k!/(a+k)! L_k(x) L_k(y)
    double sum = 0.0;
    for (long k = 0; k < spec.dims.m(); ++k) {
        const double ratio = std::exp(std::lgamma(k + 1.0) - std::lgamma(a + k + 1.0));
        sum += ratio * laguerre_eval(static_cast<int>(k), alpha, x) * laguerre_eval(static_cast<int>(k), alpha, y);
    }
    return std::exp(log_pref) * sum;
}

double one_point_density(const KernelSpec& spec, double x) {
    const long m = spec.dims.m();
    const long n = spec.dims.n();
    const long a = spec.alpha();
    if (a > 0 && x == 0.0) return 0.0;
    double log_pref = std::lgamma(m + 1.0) - std::lgamma(static_cast<double>(n)) - x;
    if (a > 0) log_pref += static_cast<double>(a) * std::log(x);
    if (log_pref < kLogUnderflow) return 0.0;
    const int b = static_cast<int>(a + 1);
    const int mi = static_cast<int>(m);
    const double lm1 = laguerre_eval(mi - 1, b, x);
    const double bracket = lm1 * lm1 - laguerre_eval(mi - 2, b, x) * laguerre_eval(mi, b, x);
    return std::exp(log_pref) * bracket;
}

// ------------------------------------------------------ Schrodinger integrals

BigRational schrodinger_integral(long q, long alpha, long beta, long s, long t) {
    if (q < 0 || s < 0 || t < 0) throw std::domain_error("schrodinger_integral requires q, s, t >= 0");
    BigRational sum = 0;
    for (long k = 0; k <= std::min(s, t); ++k) {
        const BigRational b1 = generalized_binomial(q - alpha, s - k);
        if (b1.is_zero()) continue;
        const BigRational b2 = generalized_binomial(q - beta, t - k);
        if (b2.is_zero()) continue;
        sum += b1 * b2 * BigRational::factorial_ratio(q + k, k);
    }
    return ((s + t) % 2 == 0) ? sum : -sum;
}

namespace {

enum class LogPower { One, Two };

SymExpr schrodinger_log(long q, long alpha, long beta, long s, long t, LogPower power) {
    if (q < 0 || s < 0 || t < 0) throw std::domain_error("Schrodinger integral requires q, s, t >= 0");
    SymExpr sum;
    for (long k = 0; k <= std::min(s, t); ++k) {
        const long args[5] = {q + 1 + k, q - alpha + 1, q - beta + 1, q - alpha - s + 1 + k, q - beta - t + 1 + k};
        for (long arg : args) {
            if (arg <= 0) throw DegenerateParameters(k, arg);
        }
        const BigRational coeff = generalized_binomial(q - alpha, s - k) * generalized_binomial(q - beta, t - k) *
                                  BigRational::factorial_ratio(q + k, k);
        if (coeff.is_zero()) continue;
        SymExpr d0 = psi0_int(args[0]) + psi0_int(args[1]) + psi0_int(args[2]) - psi0_int(args[3]) - psi0_int(args[4]);
        if (power == LogPower::Two) {
            const SymExpr d1 =
                psi1_int(args[0]) + psi1_int(args[1]) + psi1_int(args[2]) - psi1_int(args[3]) - psi1_int(args[4]);
            d0 = d0.squared() + d1;
        }
        sum += coeff * d0;
    }
    return ((s + t) % 2 == 0) ? sum : -sum;
}

}  // namespace

SymExpr schrodinger_B(long q, long alpha, long beta, long s, long t) {
    return schrodinger_log(q, alpha, beta, s, t, LogPower::One);
}

SymExpr schrodinger_A(long q, long alpha, long beta, long s, long t) {
    return schrodinger_log(q, alpha, beta, s, t, LogPower::Two);
}

SymExpr calB(const KernelSpec& spec, long s, long t) {
    const long a = spec.alpha();
    if (t < 0 || s < t) {
        throw std::invalid_argument("calB supports (k,k), (k+1,k) and (k+j,k) with j >= 2 only");
    }
    const long k = t;
    const long j = s - t;
    const BigRational lead = BigRational::factorial_ratio(a + k, k);
    if (j == 0) {
        return lead * (BigRational(a + 1 + 2 * k) * psi0_int(a + 1 + k) + SymExpr(2 * k + 1));
    }
    if (j == 1) {
        // The (-1)^{s+t} sign of the log-weighted integral makes this term negative.
        return -(lead * (BigRational(a + 1 + k) * psi0_int(a + 1 + k) + SymExpr(BigRational(a + 2) +
                                                                                 BigRational(3 * k, 2))));
    }
    return SymExpr(lead / BigRational(j) * (BigRational(a + 1 + k, j - 1) - BigRational(k, j + 1)));
}

SymExpr calA_regularized(const KernelSpec& spec, CalAIndex which) {
    const long m = spec.dims.m();
    const long n = spec.dims.n();
    SymExpr out;
    if (which == CalAIndex::Diagonal) {
        out += BigRational::factorial_ratio(n + 1, m - 1) * (psi0_int(n + 2).squared() + psi1_int(n + 2));
        if (m >= 2) {
            const SymExpr shifted = psi0_int(n + 1) + SymExpr(2);
            out += BigRational::factorial_ratio(n, m - 2) * (shifted.squared() + psi1_int(n + 1) - SymExpr(2));
        }
        BigRational limits = 0;
        for (long k = 0; k <= m - 3; ++k) {
            const long d1 = m - 2 - k;
            const long d2 = m - 1 - k;
            limits += BigRational::factorial_ratio(n - m + 2 + k, k) * BigRational(2, d1 * d1 * d2 * d2);
        }
        return out + SymExpr(limits);
    }
    if (m >= 2) out += BigRational::factorial_ratio(n, m - 2) * (psi0_int(n + 1) + SymExpr(1));
    if (m >= 3) out -= BigRational::factorial_ratio(n - 1, m - 3) / BigRational(3) * (psi0_int(n) + SymExpr(1));
    BigRational limits = 0;
    for (long k = 0; k <= m - 4; ++k) {
        limits += BigRational::factorial_ratio(n - m + 2 + k, k) *
                  BigRational(2, (m - 3 - k) * (m - 2 - k) * (m - 1 - k) * (m - k));
    }
    return out + SymExpr(limits);
}

// ------------------------------------------------------------- exact oracles

SymExpr symbolic_integral_oracle(const ExactPoly& poly, int offset, int log_power) {
    if (offset < 0) throw std::domain_error("oracle offset must be non-negative");
    if (log_power < 0 || log_power > 2) throw std::domain_error("oracle log_power must be 0, 1 or 2");
    SymExpr sum;
    const auto& c = poly.coefficients();
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (c[p].is_zero()) continue;
        const long a = static_cast<long>(p) + offset + 1;  // Gamma(a) moment
        const BigRational gamma_a = BigRational::factorial(a - 1);
        SymExpr moment(1);
        if (log_power == 1) moment = psi0_int(a);
        if (log_power == 2) moment = psi1_int(a) + psi0_int(a).squared();
        sum += (c[p] * gamma_a) * moment;
    }
    return sum;
}

namespace {

/// Polynomial part of K(x, x) / (x^a e^-x): sum_k k!/(a+k)! L_k^(a)(x)^2.
ExactPoly kernel_diagonal_poly(const Dims& d) {
    const int a = static_cast<int>(d.alpha());
    ExactPoly sum;
    for (long k = 0; k < d.m(); ++k) {
        const ExactPoly& l = LaguerrePoly::make(static_cast<int>(k), a).poly;
        sum += (l * l) * BigRational::factorial_ratio(k, a + k);
    }
    return sum;
}

}  // namespace

SymExpr oracle_IA(const Dims& d) {
    return symbolic_integral_oracle(kernel_diagonal_poly(d), static_cast<int>(d.alpha()) + 2, 2);
}

SymExpr oracle_IB(const Dims& d) {
    const long m = d.m();
    const int a = static_cast<int>(d.alpha());
    std::vector<LaguerrePoly> polys;
    for (long k = 0; k < m; ++k) polys.push_back(LaguerrePoly::make(static_cast<int>(k), a));
    // K^2(x,y) = e^{-x-y}(xy)^a sum_{k,l} w_k w_l L_k(x)L_l(x) L_k(y)L_l(y), w_k = k!/(a+k)!
    SymExpr sum;
    for (long k = 0; k < m; ++k) {
        for (long l = k; l < m; ++l) {
            const SymExpr one_axis =
                symbolic_integral_oracle(polys[static_cast<std::size_t>(k)].poly * polys[static_cast<std::size_t>(l)].poly,
                                         a + 1, 1);
            BigRational w = BigRational::factorial_ratio(k, a + k) * BigRational::factorial_ratio(l, a + l);
            if (l != k) w *= BigRational(2);
            sum += w * one_axis.squared();
        }
    }
    return sum;
}

// -------------------------------------------------------------- quadrature

double quadrature_upper_limit(const Dims& d) { return 4.0 * d.n() + 40.0 * d.m() + 50.0; }

namespace {

void require_desk_scale(const Dims& d) {
    if (d.n() > 8) throw std::domain_error("quadrature oracles support n <= 8");
}

}  // namespace

QuadratureResult quadrature_IA(const KernelSpec& spec) {
    require_desk_scale(spec.dims);
    const double upper = quadrature_upper_limit(spec.dims);
    auto integrand = [&spec](double x) {
        const double lx = std::log(x);
        return x * x * lx * lx * kernel_value(spec, x, x);
    };
    auto estimate = [&](const CompositeRule& rule) {
        std::vector<double> terms(rule.nodes.size());
        for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = rule.weights[i] * integrand(rule.nodes[i]);
        return pairwise_sum(terms);
    };
    return refine_until_converged(upper, RefinementControl{}, estimate, std::abs(integrand(upper)) * upper);
}

QuadratureResult quadrature_IB(const KernelSpec& spec) {
    require_desk_scale(spec.dims);
    const double upper = quadrature_upper_limit(spec.dims);
    const long m = spec.dims.m();
    const long a = spec.alpha();
    // K(x, y) = sum_k u_k(x) u_k(y), u_k = sqrt(e^-x x^a k!/(a+k)!) L_k^(a)(x)
    auto basis = [&](double x, std::vector<double>& u) {
        const double half_weight = std::exp(0.5 * log_half_weight(a, x, x));
        for (long k = 0; k < m; ++k) {
            const double ratio = std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(a + k + 1.0)));
            u[static_cast<std::size_t>(k)] = half_weight * ratio * laguerre_eval(static_cast<int>(k), static_cast<int>(a), x);
        }
    };
    auto estimate = [&](const CompositeRule& rule) {
        const std::size_t count = rule.nodes.size();
        const std::size_t mm = static_cast<std::size_t>(m);
        std::vector<double> u(count * mm);
        std::vector<double> g(count);
        std::vector<double> scratch(mm);
        for (std::size_t i = 0; i < count; ++i) {
            const double x = rule.nodes[i];
            basis(x, scratch);
            std::copy(scratch.begin(), scratch.end(), u.begin() + static_cast<std::ptrdiff_t>(i * mm));
            g[i] = rule.weights[i] * x * std::log(x);
        }
        std::vector<double> rows(count);
        std::vector<double> row(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double* ui = &u[i * mm];
            for (std::size_t j = 0; j < count; ++j) {
                const double* uj = &u[j * mm];
                double kv = 0.0;
                for (std::size_t k = 0; k < mm; ++k) kv += ui[k] * uj[k];
                row[j] = g[j] * kv * kv;
            }
            rows[i] = g[i] * pairwise_sum(row);
        }
        return pairwise_sum(rows);
    };
    RefinementControl control;
    control.max_refinements = 3;
    const double tail = std::abs(upper * std::log(upper)) * std::abs(kernel_value(spec, upper, upper)) * upper;
    return refine_until_converged(upper, control, estimate, tail);
}

}  // namespace entvar
