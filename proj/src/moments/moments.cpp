#include "entvar/moments.hpp"

#include <stdexcept>

#include "entvar/laguerre.hpp"
#include "entvar/polygamma.hpp"

namespace entvar {

namespace {

using Q = BigRational;

Q fact_ratio(long a, long b) { return BigRational::factorial_ratio(a, b); }

}  // namespace

SymExpr page_mean(const Dims& d) {
    const long m = d.m(), n = d.n();
    return psi0_int(m * n + 1) - psi0_int(n) - SymExpr(Q(m + 1, 2 * n));
}

SymExpr vpo_variance(const Dims& d) {
    const long m = d.m(), n = d.n();
    const long mn1 = m * n + 1;
    return -psi1_int(mn1) + Q(m + n, mn1) * psi1_int(n) - SymExpr(Q((m + 1) * (m + 2 * n + 1), 4 * n * n * mn1));
}

SymExpr induced_T_mean(const Dims& d) {
    const long m = d.m(), n = d.n();
    return Q(m * n) * psi0_int(n) + SymExpr(Q(m * (m + 1), 2));
}

SymExpr induced_T2_target(const Dims& d) {
    const long m = d.m(), n = d.n();
    const SymExpr p0 = psi0_int(n);
    return Q(m * n * (m + n)) * psi1_int(n) + Q(m * n * (m * n + 1)) * p0.squared() +
           Q(m * (m * m * n + m * n + m + 2 * n + 1)) * p0 + SymExpr(Q(m * (m + 1) * (m * m + m + 2), 4));
}

SymExpr IA_closed(const Dims& d) {
    const long m = d.m(), n = d.n();
    const SymExpr p0 = psi0_int(n);
    SymExpr bracket = Q(3 * n * (m + n)) * psi1_int(n) + Q(3 * n * (m + n)) * p0.squared() +
                      Q(m * m + 9 * m * n + 3 * m + 3 * n + 2) * p0 + SymExpr(m * m + 3 * m * n + 6 * m - 3 * n - 1);
    SymExpr out = Q(m, 3) * bracket;

    // Residual finite sums; empty when their upper limits fall below 1.
    Q first = 0;
    for (long k = 1; k <= m - 2; ++k) {
        first += fact_ratio(n - k, m - 2 - k) / Q(k * k * (k + 1) * (k + 1));
    }
    Q second = 0;
    for (long k = 1; k <= m - 3; ++k) {
        second += fact_ratio(n - 1 - k, m - 3 - k) / Q(k * (k + 1) * (k + 2) * (k + 3));
    }
    return out + SymExpr(Q(2) * fact_ratio(m, n - 1) * (first - second));
}

SymExpr IB_closed(const Dims& d) {
    const long m = d.m(), n = d.n();
    const long a = n - m;
    SymExpr out;
    for (long k = 0; k <= m - 1; ++k) {
        out += (Q(a + 1 + 2 * k) * psi0_int(a + 1 + k) + SymExpr(2 * k + 1)).squared();
    }
    for (long k = 0; k <= m - 2; ++k) {
        const SymExpr inner = Q(a + 1 + k) * psi0_int(a + 1 + k) + SymExpr(Q(a + 2) + Q(3 * k, 2));
        out += Q(2 * (k + 1), a + 1 + k) * inner.squared();
    }
    Q triple = 0;
    for (long j = 2; j <= m - 1; ++j) {
        for (long k = 0; k <= m - 1 - j; ++k) {
            const Q ratio = fact_ratio(a + k, a + k + j) * fact_ratio(k + j, k);
            const Q inner = Q(a + 1 + k, j - 1) - Q(k, j + 1);
            triple += Q(2) * ratio / Q(j * j) * inner * inner;
        }
    }
    return out + SymExpr(triple);
}

SymExpr IA_from_regularized(const Dims& d) {
    const KernelSpec spec(d);
    const SymExpr diff =
        calA_regularized(spec, CalAIndex::Diagonal) - calA_regularized(spec, CalAIndex::OffDiagonal);
    return fact_ratio(d.m(), d.n() - 1) * diff;
}

SymExpr IB_from_calB(const Dims& d) {
    const KernelSpec spec(d);
    const long m = d.m();
    const long a = d.alpha();
    SymExpr out;
    for (long j = 1; j <= m - 1; ++j) {
        for (long k = 0; k <= m - j - 1; ++k) {
            const Q w = Q(2) * fact_ratio(k, a + k) * fact_ratio(k + j, a + k + j);
            out += w * calB(spec, k + j, k).squared();
        }
    }
    for (long k = 0; k <= m - 1; ++k) {
        const Q w = fact_ratio(k, a + k).pow(2);
        out += w * calB(spec, k, k).squared();
    }
    return out;
}

ConsolidationCoefficients consolidation_coefficients(long m, long n) {
    // Integer polynomials in m, n; magnitudes stay far below 2^63 for the
    // dimensions this library supports.
    const long long M = m, N = n;
    const long long m2 = M * M, m3 = m2 * M, m4 = m3 * M, m5 = m4 * M;
    const long long n2 = N * N, n3 = n2 * N, n4 = n3 * N, n5 = n4 * N;
    ConsolidationCoefficients c;
    c.a1 = Q(N * (9 * m3 * N + 9 * m3 - 17 * m2 * n2 - 6 * m2 * N - m2 + 7 * M * n3 - M * n2 - 10 * M * N - 2 * M + n4 -
                  2 * n3 - n2 + 2 * N),
             3);
    c.a2 = Q(m5 + 7 * m4 * N + 2 * m4 - 26 * m3 * n2 - 26 * m3 * N - m3 + 26 * m2 * n3 + 18 * m2 * n2 + 3 * m2 * N -
                 2 * m2 - 7 * M * n4 + 10 * M * n3 + 15 * M * n2 + 4 * M * N - n5 - 4 * n4 - 5 * n3 - 2 * n2,
             3);
    c.a3 = Q(-5 * m5 - 65 * m4 * N + 14 * m4 + 139 * m3 * n2 + 169 * m3 * N + 41 * m3 - 63 * m2 * n3 - 282 * m2 * n2 -
                 142 * m2 * N - 2 * m2 - 6 * M * n4 + 87 * M * n3 - 13 * M * n2 - 40 * M * N - 12 * M + 12 * n4 +
                 42 * n3 + 42 * n2 + 12 * N,
             18);
    c.b1 = Q(-5 * m5 + 29 * m4 * N + 5 * m4 - 62 * m3 * n2 - 40 * m3 * N + m3 + 62 * m2 * n3 + 86 * m2 * n2 +
                 17 * m2 * N - m2 - 29 * M * n4 - 56 * M * n3 - 25 * M * n2 + 2 * M * N + 5 * n5 + 5 * n4 - n3 - n2,
             2);
    c.b2 = Q(5 * m5 - 29 * m4 * N - 5 * m4 + 62 * m3 * n2 + 36 * m3 * N - m3 - 62 * m2 * n3 - 82 * m2 * n2 -
                 13 * m2 * N + m2 + 29 * M * n4 + 60 * M * n3 + 25 * M * n2 - 2 * M * N - 5 * n5 - 9 * n4 - 3 * n3 + n2,
             2);
    c.b3 = Q(-29 * m5 + 83 * m4 * N + 95 * m4 - 89 * m3 * n2 - 247 * m3 * N - 89 * m3 + 45 * m2 * n3 + 243 * m2 * n2 +
                 187 * m2 * N + 29 * m2 - 10 * M * n4 - 111 * M * n3 - 140 * M * n2 - 33 * M * N + 2 * M + 20 * n4 +
                 26 * n3 + 4 * n2 - 2 * N,
             4);
    c.b4 = Q(-3 * m4 + 9 * m3 * n2 + 9 * m3 * N - 17 * m2 * n3 + 3 * m2 * n2 + 8 * m2 * N + 3 * m2 + 7 * M * n4 -
                 7 * M * n3 - 19 * M * n2 - 5 * M * N + n5 - 2 * n4 - n3 + 2 * n2,
             3);
    c.b5 = Q(m5 + 7 * m4 * N + 2 * m4 - 26 * m3 * n2 - 26 * m3 * N - m3 + 26 * m2 * n3 + 18 * m2 * n2 + 3 * m2 * N -
                 2 * m2 - 7 * M * n4 + 10 * M * n3 + 15 * M * n2 + 4 * M * N - n5 - 4 * n4 - 5 * n3 - 2 * n2,
             3);
    c.b6 = Q(-5 * m5 - 65 * m4 * N + 5 * m4 + 139 * m3 * n2 + 187 * m3 * N + 41 * m3 - 63 * m2 * n3 - 291 * m2 * n2 -
                 133 * m2 * N + 7 * m2 - 6 * M * n4 + 87 * M * n3 - 22 * M * n2 - 49 * M * N - 12 * M + 12 * n4 +
                 42 * n3 + 42 * n2 + 12 * N,
             18);
    return c;
}

SymExpr residual_digamma_sum(long m, long n) {
    SymExpr out;
    for (long k = 1; k <= m; ++k) out += Q(1, k) * psi0_int(n - m + k);
    return out;
}

namespace {

void require_consolidation_range(const Dims& d) {
    if (d.m() < 3 || d.n() <= d.m()) {
        throw std::domain_error("consolidated I_A/I_B forms need n > m >= 3; use IA_closed/IB_closed or the "
                                "special cases for m = 1, 2 or m = n");
    }
}

/// Terms shared by the consolidated forms, with the psi1(n) and psi0(n)^2
/// coefficients supplied by the caller.
SymExpr consolidated_common(const Dims& d, const SymExpr& psi1_n_coeff, const SymExpr& psi0_n_sq_coeff) {
    const long m = d.m(), n = d.n();
    const long gap = (n - m) * (n - m + 1);
    const SymExpr p0n = psi0_int(n);
    const SymExpr p0s = psi0_int(n - m + 2);
    const SymExpr p0m = psi0_int(m);
    const SymExpr p01 = psi0_int(1);
    const SymExpr inner = psi1_n_coeff * psi1_int(n) + psi1_int(n - m + 2) + psi0_n_sq_coeff * p0n.squared() -
                          p0s.squared() + Q(2) * p0s * (p0n - p0m + p01) +
                          Q(2 * (2 * n - 2 * m + 1), gap) * (p0m - p01);
    return Q(2 * m * n * (m + n)) * residual_digamma_sum(m, n) + Q(m * n * (m + n)) * inner;
}

}  // namespace

SymExpr IA_consolidated(const Dims& d) {
    require_consolidation_range(d);
    const long m = d.m(), n = d.n();
    const auto c = consolidation_coefficients(m, n);
    const Q gap((n - m) * (n - m + 1));
    return consolidated_common(d, SymExpr(0), SymExpr(0)) +
           (c.a1 * psi0_int(n) + c.a2 * psi0_int(n - m + 2) + SymExpr(c.a3)) / gap;
}

SymExpr IB_consolidated(const Dims& d) {
    require_consolidation_range(d);
    const long m = d.m(), n = d.n();
    const auto c = consolidation_coefficients(m, n);
    const Q gap((n - m) * (n - m + 1));
    return consolidated_common(d, SymExpr(-1), SymExpr(Q(-1, m + n))) +
           (c.b4 * psi0_int(n) + c.b5 * psi0_int(n - m + 2) + SymExpr(c.b6)) / gap;
}

namespace ib_chain {

SymExpr single_sums(const Dims& d) {
    const long m = d.m();
    const long a = d.alpha();
    SymExpr out;
    for (long k = 0; k <= m - 1; ++k) {
        out += (Q(a + 1 + 2 * k) * psi0_int(a + 1 + k) + SymExpr(2 * k + 1)).squared();
    }
    for (long k = 0; k <= m - 2; ++k) {
        const SymExpr inner = Q(a + 1 + k) * psi0_int(a + 1 + k) + SymExpr(Q(a + 2) + Q(3 * k, 2));
        out += Q(2 * (k + 1), a + 1 + k) * inner.squared();
    }
    return out;
}

SymExpr single_sums_closed(const Dims& d) {
    const long m = d.m(), n = d.n();
    const SymExpr p0 = psi0_int(n);
    return Q(m * n * (m + n - 1)) * p0.squared() +
           Q(3 * m * m * m + 15 * m * m * n + 3 * m * n * n - 6 * m * n - 3 * m - n * n * n + n, 6) * p0 +
           Q((n - m - 1) * (n - m) * (n - m + 1), 6) * psi0_int(n - m + 2) +
           SymExpr(Q(35 * m * m * m + 21 * m * m * n + 6 * m * n * n - 9 * m * n - 17 * m - 12 * n * n + 6 * n + 6, 36));
}

SymExpr double_sum(const Dims& d) {
    const long m = d.m();
    const long a = d.alpha();
    Q sum = 0;
    for (long j = 2; j <= m - 1; ++j) {
        for (long k = 0; k <= m - 1 - j; ++k) {
            const Q inner = Q(a + 1 + k, j - 1) - Q(k, j + 1);
            sum += Q(2) * fact_ratio(a + k, a + k + j) * fact_ratio(k + j, k) / Q(j * j) * inner * inner;
        }
    }
    return SymExpr(sum);
}

SymExpr part_inverse_j(const Dims& d) {
    require_consolidation_range(d);
    const long m = d.m(), n = d.n();
    const long poly = 2 * m * m * m - 12 * m * m * n - m * m + 12 * m * n * n + 10 * m * n - m - 2 * n * n * n - n * n + n;
    return Q(poly) * (psi0_int(n) - psi0_int(n - m + 2)) +
           SymExpr(Q((m - 2) * (12 * m * m - 22 * m * n - 9 * m + 4 * n * n - 1), 2));
}

SymExpr part_inverse_j2(const Dims& d) {
    require_consolidation_range(d);
    const long m = d.m(), n = d.n();
    const auto c = consolidation_coefficients(m, n);
    const Q gap((n - m) * (n - m + 1));
    return consolidated_common(d, SymExpr(-1), SymExpr(-1)) +
           (c.b1 * psi0_int(n) + c.b2 * psi0_int(n - m + 2) + SymExpr(c.b3)) / gap;
}

}  // namespace ib_chain

SymExpr assemble_E_T2(const Dims& d) { return IA_closed(d) - IB_closed(d) + induced_T_mean(d).squared(); }

SymExpr second_moment_S(const Dims& d) {
    const long mn = d.mn();
    const SymExpr p0 = psi0_int(mn + 2);
    return assemble_E_T2(d) / Q(mn * (mn + 1)) + Q(2) * p0 * page_mean(d) - psi1_int(mn + 2) - p0.squared();
}

SymExpr variance_S_via_relation(const Dims& d) { return second_moment_S(d) - page_mean(d).squared(); }

SpecialCase special_case(const Dims& d, TableRow row) {
    const long m = d.m(), n = d.n();
    const SymExpr p0 = psi0_int(n);
    const SymExpr p1 = psi1_int(n);
    const SymExpr p0sq = p0.squared();
    switch (row) {
        case TableRow::MEqualsOne: {
            if (m != 1) throw std::domain_error("table row m=1 requested for m != 1");
            const SymExpr ia = Q(n * (n + 1)) * p1 + Q(n * (n + 1)) * p0sq + Q(4 * n + 2) * p0 + SymExpr(2);
            return {ia, (Q(n) * p0 + SymExpr(1)).squared(), ia};
        }
        case TableRow::MEqualsTwo: {
            if (m != 2) throw std::domain_error("table row m=2 requested for m != 2");
            const SymExpr ia =
                Q(2) * (Q(n * (n + 2)) * p1 + Q(n * (n + 2)) * p0sq + Q(7 * n + 4) * p0 + SymExpr(n + 5));
            const SymExpr ib = Q(2 * n * (n + 1)) * p0sq + Q(2 * (5 * n + 1)) * p0 + SymExpr(2 * n + 7);
            const SymExpr et2 =
                Q(2) * (Q(n * (n + 2)) * p1 + Q(n * (2 * n + 1)) * p0sq + Q(8 * n + 3) * p0 + SymExpr(6));
            return {ia, ib, et2};
        }
        case TableRow::MEqualsN: {
            if (m != n) throw std::domain_error("table row m=n requested for m != n");
            const long n2 = n * n, n3 = n2 * n;
            const SymExpr q1 = psi1_int(1);
            const SymExpr ia = Q(1, 9) * (Q(-18 * n3) * p1 + Q(36 * n3) * q1 + Q(18 * n3) * p0sq +
                                          Q(6 * n * (5 * n2 + 3 * n + 1)) * p0 +
                                          SymExpr(-43 * n3 + 33 * n2 + 22 * n + 6));
            const SymExpr ib = Q(1, 18) * (Q(-72 * n3) * p1 + Q(72 * n3) * q1 + Q(18 * (2 * n - 1) * n2) * p0sq +
                                           Q(6 * n * (10 * n2 - 3 * n - 1)) * p0 +
                                           SymExpr(-86 * n3 + 57 * n2 + 35 * n + 12));
            const SymExpr et2 = Q(1, 4) * (Q(8 * n3) * p1 + Q(4 * n2 * (n2 + 1)) * p0sq +
                                           Q(4 * n * (n3 + n2 + 3 * n + 1)) * p0 + SymExpr(n * (n + 1) * (n2 + n + 2)));
            return {ia, ib, et2};
        }
    }
    throw std::invalid_argument("unknown table row");
}

std::string to_string(Ensemble e) { return e == Ensemble::FixedTrace ? "fixed-trace" : "laguerre"; }

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::MeanS: return "mean_S";
        case Quantity::VarS: return "var_S";
        case Quantity::ET: return "E_T";
        case Quantity::ET2: return "E_T2";
        case Quantity::SecondMomentS: return "second_moment_S";
        case Quantity::IA: return "I_A";
        case Quantity::IB: return "I_B";
    }
    return "unknown";
}

MomentReport moment_report(const Dims& d, Quantity q) {
    SymExpr exact;
    Ensemble ensemble = Ensemble::Laguerre;
    switch (q) {
        case Quantity::MeanS: exact = page_mean(d), ensemble = Ensemble::FixedTrace; break;
        case Quantity::VarS: exact = vpo_variance(d), ensemble = Ensemble::FixedTrace; break;
        case Quantity::SecondMomentS: exact = second_moment_S(d), ensemble = Ensemble::FixedTrace; break;
        case Quantity::ET: exact = induced_T_mean(d); break;
        case Quantity::ET2: exact = induced_T2_target(d); break;
        case Quantity::IA: exact = IA_closed(d); break;
        case Quantity::IB: exact = IB_closed(d); break;
    }
    return {d, ensemble, q, exact, exact.to_double()};
}

}  // namespace entvar
