#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entvar/bigrational.hpp"
#include "entvar/symexpr.hpp"

namespace entvar {

enum class IdentityId {
    A1, A2, A3, A4, A5, A6, A7, A8, A9,  // finite sums of polygamma values
    A10,                                  // Chu-Vandermonde factorial sum
    A11, A12,                             // factorial sums weighted by 1/k and 1/k^2
    WY1, WY2,                             // recurrences for the two weighted sums
    MILGRAM,                              // sum psi0(n-m+k)/(n-m+k)
    HYP3F2,                               // 3F2 unit-argument form of A11
    HYP4F3,                               // 4F3 unit-argument byproduct of A12
};

std::string to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(const std::string& name);

/// True for A1..A9, which take parameters (n, l); the rest take (m, n).
bool is_psi_sum(IdentityId id);

/// A parameter tuple outside an identity's validity domain.
struct IdentityDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// One term `coefficient * basis` of a closed-form right-hand side.
struct RhsTerm {
    BigRational coefficient;
    SymExpr basis;
};

/// Adds `delta` to the coefficient of one right-hand-side term.
struct Perturbation {
    std::size_t term_index;
    BigRational delta = 1;
};

struct IdentityCheckResult {
    IdentityId id;
    /// "n,l" for A1..A9, "m,n" otherwise.
    std::string parameter_names;
    long first;
    long second;
    SymExpr lhs;
    SymExpr rhs;
    bool equal;
};

/// Literal left-hand side and closed-form right-hand side terms.
SymExpr identity_lhs(IdentityId id, long first, long second);
std::vector<RhsTerm> identity_rhs_terms(IdentityId id, long first, long second);

/// Exact check of one identity instance. Throws IdentityDomainError when the
/// parameters are outside the identity's domain.
IdentityCheckResult check_identity(IdentityId id, long first, long second,
                                   std::optional<Perturbation> perturbation = std::nullopt);

IdentityCheckResult check_psi_sum(IdentityId id, long n, long l);
IdentityCheckResult check_factorial_sum(IdentityId id, long m, long n);
/// WY1 and WY2 at (m, n).
std::vector<IdentityCheckResult> check_recurrences(long m, long n);
IdentityCheckResult check_milgram(long m, long n);
IdentityCheckResult check_hyp4F3(long m, long n);

/// s(m,n) = sum_{k=1}^{m} (n-k)!/(m-k)!/k and t(m,n) with 1/k^2, by literal summation.
BigRational weighted_factorial_sum(long m, long n, int inverse_power);

/// Terminating generalized hypergeometric series at `z`. Throws
/// std::domain_error if a lower parameter reaches zero before termination.
BigRational terminating_hypergeometric(std::span<const BigRational> upper, std::span<const BigRational> lower,
                                       const BigRational& z);

struct IdentitySweep {
    std::vector<IdentityCheckResult> results;
    std::size_t skipped = 0;

    std::size_t failures() const;
    bool all_equal() const { return failures() == 0; }
};

/// Every identity at every parameter pair in [1, max]^2; out-of-domain pairs are skipped.
IdentitySweep sweep_identities(long max, std::optional<std::pair<IdentityId, Perturbation>> mutation = std::nullopt);

const std::vector<IdentityId>& all_identities();

}  // namespace entvar
