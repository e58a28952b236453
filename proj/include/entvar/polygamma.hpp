#pragma once

#include <mutex>
#include <vector>

#include "entvar/bigrational.hpp"
#include "entvar/symexpr.hpp"

namespace entvar {

/// Harmonic numbers H_l, H_l^(2) and the exact polygamma values built from
/// them. Grows on demand; safe to share between threads.
class PolygammaTable {
public:
    /// H_l = sum_{k=1}^{l} 1/k, l >= 0.
    BigRational harmonic(long l) const;
    /// H_l^(2) = sum_{k=1}^{l} 1/k^2, l >= 0.
    BigRational harmonic2(long l) const;

    SymExpr psi0(long l) const;
    SymExpr psi1(long l) const;

    static const PolygammaTable& shared();

private:
    void grow_to(long l) const;

    mutable std::mutex mutex_;
    mutable std::vector<BigRational> h1_{BigRational(0)};
    mutable std::vector<BigRational> h2_{BigRational(0)};
};

/// Digamma at a positive integer: -gamma + H_{l-1}. Throws std::domain_error for l <= 0.
SymExpr psi0_int(long l);
/// Trigamma at a positive integer: pi^2/6 - H^(2)_{l-1}. Throws std::domain_error for l <= 0.
SymExpr psi1_int(long l);

/// Checks psi0(l+n) = psi0(l) + sum_{k<n} 1/(l+k) and the trigamma analogue exactly.
bool psi_shift_check(long l, long n);

// Floating-point polygamma for real x > 0: upward recurrence to x >= 10,
// then the asymptotic series with eight Bernoulli terms.
double digamma_real(double x);
double trigamma_real(double x);

}  // namespace entvar
