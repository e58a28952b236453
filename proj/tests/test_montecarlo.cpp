#include <doctest.h>

#include <cmath>
#include <random>

#include "entvar/montecarlo.hpp"
#include "oracles.hpp"

using namespace entvar;

TEST_SUITE("montecarlo") {

TEST_CASE("Ginibre entries have unit second moment") {
    NormalSource rng(2024, 0);
    double sum = 0.0, sum2 = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const double v = std::norm(sample_ginibre(Dims(1, 1), rng)(0, 0));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CHECK(std::abs(mean - 1.0) < 3.0 * se);
    // Exponential law: variance equals squared mean.
    CHECK(sum2 / draws - mean * mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("fixed seed gives bit-identical draws") {
    NormalSource a(42, 3), b(42, 3), c(42, 4);
    const auto ya = sample_ginibre(Dims(3, 5), a);
    const auto yb = sample_ginibre(Dims(3, 5), b);
    const auto yc = sample_ginibre(Dims(3, 5), c);
    CHECK(ya.data() == yb.data());
    CHECK(ya.data() != yc.data());
}

TEST_CASE("Hermitian eigenvalues: closed forms") {
    ComplexMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    const auto ed = hermitian_eigenvalues(d);
    CHECK(ed[0] == 3.0);
    CHECK(ed[1] == 1.0);

    ComplexMatrix h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(0, 1) = {1.0, 1.0};
    h(1, 0) = {1.0, -1.0};
    const auto e = hermitian_eigenvalues(h);
    CHECK(e[0] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(e[1] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("Hermitian eigenvalues: reconstruction and trace") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t m : {1u, 2u, 3u, 5u, 8u, 16u, 32u}) {
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> values(m);
            for (auto& v : values) v = u(rng);
            const auto q = oracle::random_unitary(m, rng);
            const auto h = oracle::conjugate_diagonal(q, values);
            const auto got = hermitian_eigenvalues(h);
            std::sort(values.begin(), values.end(), std::greater<>());
            double trace = 0.0, sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                CHECK(std::abs(got[i] - values[i]) < 1e-9);
                trace += h(i, i).real();
                sum += got[i];
            }
            CHECK(std::abs(sum - trace) < 1e-10);
            CHECK(std::is_sorted(got.begin(), got.end(), std::greater<>()));
        }
    }
}

TEST_CASE("Hermitian eigenvalues: input validation") {
    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(33, 33)), std::invalid_argument);
    ComplexMatrix skew(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), std::invalid_argument);
    const auto zero = hermitian_eigenvalues(ComplexMatrix(3, 3));
    CHECK(zero == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("per-sample invariants") {
    NormalSource rng(5, 0);
    for (int i = 0; i < 200; ++i) {
        const auto s = draw_sample(Dims(1, 4), rng);
        CHECK(s.S == 0.0);
        CHECK(s.T == doctest::Approx(s.r * std::log(s.r)).epsilon(1e-15));
    }
    for (auto [m, n] : {std::pair{2L, 2L}, {3L, 4L}, {4L, 9L}}) {
        for (int i = 0; i < 500; ++i) {
            const auto s = draw_sample(Dims(m, n), rng);
            double total = 0.0;
            for (double l : s.lambda) total += l;
            CHECK(std::abs(total - 1.0) < 1e-12);
            CHECK(s.S >= 0.0);
            CHECK(s.S <= std::log(static_cast<double>(m)) + 1e-12);
            CHECK(std::abs(s.r * std::log(s.r) - s.r * s.S - s.T) < 1e-10);
            CHECK(std::is_sorted(s.theta.begin(), s.theta.end(), std::greater<>()));
        }
    }
}

TEST_CASE("estimator is independent of the thread count") {
    const auto one = estimate_moments(Dims(2, 3), 50000, 9, 1);
    const auto four = estimate_moments(Dims(2, 3), 50000, 9, 4);
    CHECK(one.mean_S.value == four.mean_S.value);
    CHECK(one.var_S.value == four.var_S.value);
    CHECK(one.var_S.standard_error == four.var_S.standard_error);
    CHECK(one.E_T2.value == four.E_T2.value);
    CHECK(one.corr_rS == four.corr_rS);
    CHECK(one.audit.max_trace_identity_error == four.audit.max_trace_identity_error);
    CHECK_THROWS_AS(estimate_moments(Dims(2, 3), 999, 9, 1), std::invalid_argument);
}

TEST_CASE("estimator against closed forms at moderate N") {
    const auto report = estimate_moments(Dims(2, 2), 100000, 17, 0);
    for (const auto& c : compare_with_closed_forms(report, MonteCarloTolerances::uniform(4.0))) CHECK_MESSAGE(c.pass, c.name << " z=" << c.z);
    CHECK(report.var_S.standard_error > 0.0);

    const auto trivial = estimate_moments(Dims(1, 5), 2000, 3, 1);
    CHECK(trivial.var_S.value == 0.0);
    CHECK(trivial.corr_rS == 0.0);
    for (const auto& c : compare_with_closed_forms(trivial)) CHECK(c.pass);
}

}
