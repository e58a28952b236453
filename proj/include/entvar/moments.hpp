#pragma once

#include <string>

#include "entvar/bigrational.hpp"
#include "entvar/dims.hpp"
#include "entvar/symexpr.hpp"

namespace entvar {

// Fixed-trace ensemble: entanglement entropy S of a random pure state.

/// Page's mean: psi0(mn+1) - psi0(n) - (m+1)/(2n).
SymExpr page_mean(const Dims& d);
/// Variance: -psi1(mn+1) + (m+n)/(mn+1) psi1(n) - (m+1)(m+2n+1)/(4n^2(mn+1)).
SymExpr vpo_variance(const Dims& d);

// Laguerre ensemble: induced entropy T = sum theta_i ln theta_i.

/// E[T] = mn psi0(n) + m(m+1)/2.
SymExpr induced_T_mean(const Dims& d);
/// Closed form that E[T^2] must equal for the variance formula to hold.
SymExpr induced_T2_target(const Dims& d);

/// I_A = int x^2 ln^2 x K(x,x) dx from its general finite-sum form; valid for all m <= n.
SymExpr IA_closed(const Dims& d);
/// I_B = int int xy ln x ln y K^2(x,y) from its general finite-sum form.
SymExpr IB_closed(const Dims& d);

/// I_A = m!/(n-1)! (A_{m-1,m-1} - A_{m-2,m}) from the regularized log^2 integrals.
SymExpr IA_from_regularized(const Dims& d);
/// I_B from the squared log-weighted integrals B_{s,t} of the kernel expansion.
SymExpr IB_from_calB(const Dims& d);

/// Polynomial coefficients of the consolidated I_A / I_B forms.
struct ConsolidationCoefficients {
    BigRational a1, a2, a3;
    BigRational b1, b2, b3;
    BigRational b4, b5, b6;
};

ConsolidationCoefficients consolidation_coefficients(long m, long n);

/// sum_{k=1}^{m} psi0(n-m+k)/k, the residual sum shared by the consolidated forms.
SymExpr residual_digamma_sum(long m, long n);

/// Consolidated I_A, I_B; require n > m >= 3 (std::domain_error otherwise).
SymExpr IA_consolidated(const Dims& d);
SymExpr IB_consolidated(const Dims& d);

/// Pieces of the I_B simplification chain, each in its summed and closed form.
namespace ib_chain {
/// First two sums of I_B (diagonal and superdiagonal kernel terms), summed literally.
SymExpr single_sums(const Dims& d);
SymExpr single_sums_closed(const Dims& d);
/// The j >= 2 double sum of I_B, summed literally.
SymExpr double_sum(const Dims& d);
/// Closed forms of the 1/j and 1/j^2 parts of the double sum (n > m >= 3).
SymExpr part_inverse_j(const Dims& d);
SymExpr part_inverse_j2(const Dims& d);
}  // namespace ib_chain

/// E_g[T^2] = I_A - I_B + E_g[T]^2.
SymExpr assemble_E_T2(const Dims& d);

/// E_f[S^2] from E_g[T^2] through the trace/eigenvalue factorization.
SymExpr second_moment_S(const Dims& d);
/// second_moment_S - page_mean^2.
SymExpr variance_S_via_relation(const Dims& d);

enum class TableRow { MEqualsOne, MEqualsTwo, MEqualsN };

struct SpecialCase {
    SymExpr IA;
    SymExpr IB;
    SymExpr E_T2;
};

/// Simplified special cases m = 1, m = 2 and m = n. Throws std::domain_error
/// if `d` does not belong to `row`.
SpecialCase special_case(const Dims& d, TableRow row);

enum class Ensemble { FixedTrace, Laguerre };
enum class Quantity { MeanS, VarS, ET, ET2, SecondMomentS, IA, IB };

std::string to_string(Ensemble e);
std::string to_string(Quantity q);

struct MomentReport {
    Dims dims;
    Ensemble ensemble;
    Quantity quantity;
    SymExpr exact;
    double numeric;
};

MomentReport moment_report(const Dims& d, Quantity q);

}  // namespace entvar
