#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "entvar/bigrational.hpp"
#include "entvar/dims.hpp"
#include "entvar/quadrature.hpp"
#include "entvar/symexpr.hpp"

namespace entvar {

/// Polynomial with exact coefficients, index i holding the x^i coefficient.
class ExactPoly {
public:
    ExactPoly() = default;
    explicit ExactPoly(std::vector<BigRational> coefficients);

    static ExactPoly monomial(int power, BigRational coefficient = 1);

    const std::vector<BigRational>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    ExactPoly& operator+=(const ExactPoly& rhs);
    ExactPoly& operator-=(const ExactPoly& rhs);
    ExactPoly& operator*=(const BigRational& scalar);
    friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
    friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
    friend ExactPoly operator*(ExactPoly a, const BigRational& s) { return a *= s; }
    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
    friend bool operator==(const ExactPoly&, const ExactPoly&) = default;

    double evaluate(double x) const;

private:
    void trim();

    std::vector<BigRational> coeffs_;
};

/// Generalized Laguerre polynomial L_k^(alpha) with exact coefficients
/// (-1)^i C(alpha+k, k-i) / i!. Negative degrees give the zero polynomial.
struct LaguerrePoly {
    int degree;
    int alpha;
    ExactPoly poly;

    static LaguerrePoly make(int degree, int alpha);
};

/// L_k^(alpha)(x) by the three-term recurrence; zero for k < 0.
double laguerre_eval(int k, int alpha, double x);

/// Generalized binomial C(a, j): falling factorial a(a-1)...(a-j+1)/j! for
/// any integer a, and 0 for j < 0.
BigRational generalized_binomial(long a, long j);

/// Laguerre-ensemble correlation kernel parameters.
struct KernelSpec {
    Dims dims;
    /// c = prod_{i=1}^{m} Gamma(n-i+1) Gamma(i).
    BigRational normalization;

    explicit KernelSpec(Dims d);
    long alpha() const { return dims.alpha(); }
};

double kernel_value(const KernelSpec& spec, double x, double y);
/// One-point correlation via the L^(n-m+1) representation; equals K(x, x).
double one_point_density(const KernelSpec& spec, double x);

/// int_0^inf x^q e^-x L_s^(alpha) L_t^(beta) dx, exact.
BigRational schrodinger_integral(long q, long alpha, long beta, long s, long t);

struct DegenerateParameters : std::domain_error {
    DegenerateParameters(long k, long argument)
        : std::domain_error("degenerate Schrodinger term k=" + std::to_string(k) +
                            ": polygamma at non-positive argument " + std::to_string(argument)),
          term(k) {}
    long term;
};

/// Log-weighted Schrodinger integral (first q-derivative). Throws
/// DegenerateParameters when a term needs a polygamma at a non-positive integer.
SymExpr schrodinger_B(long q, long alpha, long beta, long s, long t);
/// Log^2-weighted Schrodinger integral (second q-derivative).
SymExpr schrodinger_A(long q, long alpha, long beta, long s, long t);

/// B^{(n-m,n-m)}_{s,t}(n-m+1) in closed form for (s,t) = (k,k), (k+1,k), (k+j,k) with j >= 2.
SymExpr calB(const KernelSpec& spec, long s, long t);

enum class CalAIndex { Diagonal, OffDiagonal };  // (m-1,m-1) and (m-2,m)

/// A^{(n-m+1,n-m+1)}_{s,t}(n-m+2) for the two index pairs entering I_A,
/// with the negative-argument polygamma limits taken in closed form.
SymExpr calA_regularized(const KernelSpec& spec, CalAIndex which);

/// int_0^inf x^offset e^-x ln^log_power(x) poly(x) dx, monomial by monomial.
SymExpr symbolic_integral_oracle(const ExactPoly& poly, int offset, int log_power);

/// I_A by expanding the one-point function into monomials.
SymExpr oracle_IA(const Dims& d);
/// I_B by expanding K^2 and integrating each variable separately.
SymExpr oracle_IB(const Dims& d);

QuadratureResult quadrature_IA(const KernelSpec& spec);
QuadratureResult quadrature_IB(const KernelSpec& spec);

/// Upper integration limit R = 4n + 40m + 50.
double quadrature_upper_limit(const Dims& d);

}  // namespace entvar
