#include <doctest.h>

#include "entvar/identities.hpp"
#include "entvar/polygamma.hpp"

using namespace entvar;

namespace {

SymExpr rational(long p, long q = 1) { return SymExpr(BigRational(p, q)); }

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("polygamma sums: worked instances") {
    const SymExpr g = SymExpr::gamma();
    const auto a1 = check_psi_sum(IdentityId::A1, 1, 1);
    CHECK(a1.equal);
    CHECK(a1.lhs == rational(1) - g);

    const auto a1b = check_psi_sum(IdentityId::A1, 2, 3);
    CHECK(a1b.equal);
    CHECK(a1b.lhs == rational(47, 12) - BigRational(2) * g);

    const auto a7 = check_psi_sum(IdentityId::A7, 3, 2);
    CHECK(a7.equal);
    CHECK(a7.lhs == psi1_int(3) + psi1_int(4) + psi1_int(5));
    CHECK(a7.rhs == BigRational(5) * psi1_int(5) - BigRational(2) * psi1_int(2) + psi0_int(5) - psi0_int(2));
    CHECK(a7.parameter_names == "n,l");
}

TEST_CASE("factorial sums: worked instances") {
    const auto a10 = check_factorial_sum(IdentityId::A10, 2, 3);
    CHECK(a10.equal);
    CHECK(a10.lhs == rational(3));
    const auto a11 = check_factorial_sum(IdentityId::A11, 2, 3);
    CHECK(a11.equal);
    CHECK(a11.lhs == rational(5, 2));
    CHECK(check_factorial_sum(IdentityId::A12, 2, 4).equal);
    CHECK_THROWS_AS(check_factorial_sum(IdentityId::A12, 3, 3), IdentityDomainError);
    CHECK_THROWS_AS(check_factorial_sum(IdentityId::A10, 4, 3), IdentityDomainError);
    CHECK_THROWS_AS(check_factorial_sum(IdentityId::A1, 1, 1), std::invalid_argument);
}

TEST_CASE("recurrences") {
    CHECK(weighted_factorial_sum(1, 2, 1) == BigRational(1));
    CHECK(weighted_factorial_sum(0, 1, 1) == BigRational(0));
    CHECK(weighted_factorial_sum(2, 4, 1) == BigRational(7));
    for (const auto& r : check_recurrences(1, 2)) CHECK(r.equal);
    const auto both = check_recurrences(2, 4);
    CHECK(both[0].lhs == rational(7));
    CHECK(both[0].equal);
    CHECK(check_recurrences(3, 5)[1].equal);
}

TEST_CASE("Milgram identity") {
    const auto r = check_milgram(1, 2);
    CHECK(r.equal);
    CHECK(r.lhs == (rational(1) - SymExpr::gamma()) / BigRational(2));
    CHECK(check_milgram(2, 3).equal);
    CHECK(check_milgram(5, 9).equal);
    CHECK_THROWS_AS(check_milgram(3, 3), IdentityDomainError);
}

TEST_CASE("hypergeometric forms") {
    for (long n = 2; n <= 9; ++n) {
        CHECK(identity_lhs(IdentityId::HYP4F3, 1, n) == rational(1));
        CHECK(check_hyp4F3(1, n).equal);
    }
    CHECK(check_hyp4F3(2, 3).equal);
    CHECK(check_hyp4F3(4, 7).equal);

    // The scaled series reproduces A12's right-hand side: (n-1)!/(m-1)! 4F3 = t(m,n).
    for (long n = 2; n <= 12; ++n)
        for (long m = 1; m < n; ++m) {
            const SymExpr scaled = BigRational::factorial_ratio(n - 1, m - 1) * identity_lhs(IdentityId::HYP4F3, m, n);
            CHECK(scaled == SymExpr(weighted_factorial_sum(m, n, 2)));
            CHECK(check_identity(IdentityId::HYP3F2, m, n).equal);
        }

    const std::vector<BigRational> up{BigRational(-2), BigRational(1)};
    const std::vector<BigRational> low{BigRational(3)};
    // 2F1(-2, 1; 3; 1) = 1 - 2/3 + 1/6 = 1/2.
    CHECK(terminating_hypergeometric(up, low, BigRational(1)) == BigRational(1, 2));
    const std::vector<BigRational> bad_low{BigRational(-1)};
    const std::vector<BigRational> long_up{BigRational(-3)};
    CHECK_THROWS_AS(terminating_hypergeometric(long_up, bad_low, BigRational(1)), std::domain_error);
}

TEST_CASE("names round-trip") {
    for (IdentityId id : all_identities()) CHECK(identity_from_string(to_string(id)) == id);
    CHECK_FALSE(identity_from_string("A13").has_value());
}

TEST_CASE("sweep at a small bound") {
    const IdentitySweep sweep = sweep_identities(8);
    CHECK(sweep.all_equal());
    CHECK(sweep.skipped > 0);
    CHECK(sweep.results.size() + sweep.skipped == all_identities().size() * 64);
}

TEST_CASE("every right-hand-side coefficient matters") {
    // Adding 1 to any single coefficient must break at least one case.
    for (IdentityId id : all_identities()) {
        const long first = 2;
        const long second = is_psi_sum(id) ? 3 : 5;
        const std::size_t terms = identity_rhs_terms(id, first, second).size();
        for (std::size_t i = 0; i < terms; ++i) {
            const IdentitySweep mutated = sweep_identities(6, std::pair{id, Perturbation{i, BigRational(1)}});
            CHECK_MESSAGE(!mutated.all_equal(), to_string(id) << " term " << i);
        }
    }
}

}
