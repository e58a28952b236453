#pragma once

#include <compare>
#include <map>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "entvar/bigrational.hpp"

namespace entvar {

/// Fixed 120-digit MPFR type; a static precision keeps evaluation free of
/// the library's process-wide default-precision state.
using HighPrecision = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;

/// Exponents of one monomial gamma^gamma_deg * (pi^2)^pi2_deg.
struct Monomial {
    int gamma_deg = 0;
    int pi2_deg = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Exact polynomial in Euler's constant and pi^2 with rational coefficients.
///
/// Canonical form: zero coefficients are never stored, so structural
/// equality of the coefficient maps is value equality.
class SymExpr {
public:
    using Terms = std::map<Monomial, BigRational>;

    SymExpr() = default;
    SymExpr(BigRational constant);  // NOLINT(google-explicit-constructor)
    SymExpr(long long constant) : SymExpr(BigRational(constant)) {}  // NOLINT

    static SymExpr gamma();
    static SymExpr pi_squared();
    static SymExpr monomial(BigRational coefficient, Monomial exponents);

    const Terms& terms() const { return terms_; }
    BigRational coefficient(Monomial exponents) const;
    bool is_zero() const { return terms_.empty(); }
    int gamma_degree() const;
    int pi2_degree() const;

    SymExpr operator-() const;
    SymExpr& operator+=(const SymExpr& rhs);
    SymExpr& operator-=(const SymExpr& rhs);
    SymExpr& operator*=(const SymExpr& rhs);
    SymExpr& operator*=(const BigRational& scalar);
    SymExpr& operator/=(const BigRational& scalar);

    friend SymExpr operator+(SymExpr lhs, const SymExpr& rhs) { return lhs += rhs; }
    friend SymExpr operator-(SymExpr lhs, const SymExpr& rhs) { return lhs -= rhs; }
    friend SymExpr operator*(SymExpr lhs, const SymExpr& rhs) { return lhs *= rhs; }
    friend SymExpr operator*(SymExpr lhs, const BigRational& rhs) { return lhs *= rhs; }
    friend SymExpr operator*(const BigRational& lhs, SymExpr rhs) { return rhs *= lhs; }
    friend SymExpr operator/(SymExpr lhs, const BigRational& rhs) { return lhs /= rhs; }

    friend bool operator==(const SymExpr&, const SymExpr&) = default;

    SymExpr squared() const { return *this * *this; }

    /// Substitutes gamma and pi^2 at `precision_digits` significant digits
    /// (15 <= precision_digits <= 100).
    HighPrecision evaluate(unsigned precision_digits) const;
    double to_double() const;

    /// Human-readable form, e.g. "13/36 - 1/30*pi^2".
    std::string to_string() const;

private:
    void add_term(const Monomial& exponents, const BigRational& coefficient);

    Terms terms_;
};

inline constexpr unsigned kMaxEvalDigits = 100;

/// Euler's constant and pi^2 at the requested precision.
HighPrecision euler_gamma(unsigned precision_digits);
HighPrecision pi_squared(unsigned precision_digits);

}  // namespace entvar
