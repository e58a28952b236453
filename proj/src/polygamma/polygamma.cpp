#include "entvar/polygamma.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entvar {

void PolygammaTable::grow_to(long l) const {
    while (static_cast<long>(h1_.size()) <= l) {
        const long k = static_cast<long>(h1_.size());
        h1_.push_back(h1_.back() + BigRational(1, k));
        h2_.push_back(h2_.back() + BigRational(1, k * k));
    }
}

BigRational PolygammaTable::harmonic(long l) const {
    if (l < 0) throw std::domain_error("harmonic number of negative order");
    std::lock_guard lock(mutex_);
    grow_to(l);
    return h1_[static_cast<std::size_t>(l)];
}

BigRational PolygammaTable::harmonic2(long l) const {
    if (l < 0) throw std::domain_error("harmonic number of negative order");
    std::lock_guard lock(mutex_);
    grow_to(l);
    return h2_[static_cast<std::size_t>(l)];
}

SymExpr PolygammaTable::psi0(long l) const {
    if (l <= 0) throw std::domain_error("psi0 at non-positive integer " + std::to_string(l));
    return SymExpr(harmonic(l - 1)) - SymExpr::gamma();
}

SymExpr PolygammaTable::psi1(long l) const {
    if (l <= 0) throw std::domain_error("psi1 at non-positive integer " + std::to_string(l));
    return SymExpr::monomial(BigRational(1, 6), {0, 1}) - SymExpr(harmonic2(l - 1));
}

const PolygammaTable& PolygammaTable::shared() {
    static const PolygammaTable table;
    return table;
}

SymExpr psi0_int(long l) { return PolygammaTable::shared().psi0(l); }

SymExpr psi1_int(long l) { return PolygammaTable::shared().psi1(l); }

bool psi_shift_check(long l, long n) {
    if (l < 1 || n < 1) throw std::domain_error("psi_shift_check requires l, n >= 1");
    BigRational s1 = 0;
    BigRational s2 = 0;
    for (long k = 0; k < n; ++k) {
        s1 += BigRational(1, l + k);
        s2 += BigRational(1, (l + k) * (l + k));
    }
    return psi0_int(l + n) == psi0_int(l) + SymExpr(s1) && psi1_int(l + n) == psi1_int(l) - SymExpr(s2);
}

namespace {

constexpr double kSwitch = 10.0;

// B_{2k}/(2k) for k = 1..8, for the digamma series.
constexpr std::array<double, 8> kDigammaCoeffs = {
    1.0 / 12.0,    -1.0 / 120.0,      1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0,   -691.0 / 32760.0,  1.0 / 12.0,   -3617.0 / 8160.0,
};

// B_{2k} for k = 1..8, for the trigamma series.
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0,       1.0 / 42.0,   -1.0 / 30.0,
    5.0 / 66.0,    -691.0 / 2730.0,   7.0 / 6.0,    -3617.0 / 510.0,
};

}  // namespace

double digamma_real(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma_real requires x > 0");
    double shift = 0.0;
    while (x < kSwitch) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double p = inv2;
    for (double c : kDigammaCoeffs) {
        series += c * p;
        p *= inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

double trigamma_real(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma_real requires x > 0");
    double shift = 0.0;
    while (x < kSwitch) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    // psi1(x) ~ 1/x + 1/(2x^2) + sum_k B_{2k} / x^{2k+1}
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv2 * inv;
    for (double b : kBernoulli) {
        series += b * p;
        p *= inv2;
    }
    return shift + inv + 0.5 * inv2 + series;
}

}  // namespace entvar
