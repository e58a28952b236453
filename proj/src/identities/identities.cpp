#include "entvar/identities.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "entvar/polygamma.hpp"

namespace entvar {

namespace {

using Q = BigRational;

Q fact_ratio(long a, long b) { return BigRational::factorial_ratio(a, b); }

constexpr std::array<std::pair<IdentityId, const char*>, 17> kNames = {{
    {IdentityId::A1, "A1"},         {IdentityId::A2, "A2"},         {IdentityId::A3, "A3"},
    {IdentityId::A4, "A4"},         {IdentityId::A5, "A5"},         {IdentityId::A6, "A6"},
    {IdentityId::A7, "A7"},         {IdentityId::A8, "A8"},         {IdentityId::A9, "A9"},
    {IdentityId::A10, "A10"},       {IdentityId::A11, "A11"},       {IdentityId::A12, "A12"},
    {IdentityId::WY1, "WY1"},       {IdentityId::WY2, "WY2"},       {IdentityId::MILGRAM, "MILGRAM"},
    {IdentityId::HYP3F2, "HYP3F2"}, {IdentityId::HYP4F3, "HYP4F3"},
}};

SymExpr sum_over_k(long n, long l, int k_power, const auto& f) {
    SymExpr s;
    for (long k = 1; k <= n; ++k) {
        long w = 1;
        for (int p = 0; p < k_power; ++p) w *= k;
        s += Q(w) * f(k + l);
    }
    return s;
}

SymExpr psi0_sq(long x) { return psi0_int(x).squared(); }

SymExpr psi_sum_lhs(IdentityId id, long n, long l) {
    switch (id) {
        case IdentityId::A1: return sum_over_k(n, l, 0, psi0_int);
        case IdentityId::A2: return sum_over_k(n, l, 1, psi0_int);
        case IdentityId::A3: return sum_over_k(n, l, 2, psi0_int);
        case IdentityId::A4: return sum_over_k(n, l, 0, psi0_sq);
        case IdentityId::A5: return sum_over_k(n, l, 1, psi0_sq);
        case IdentityId::A6: return sum_over_k(n, l, 2, psi0_sq);
        case IdentityId::A7: return sum_over_k(n, l, 0, psi1_int);
        case IdentityId::A8: return sum_over_k(n, l, 1, psi1_int);
        case IdentityId::A9: return sum_over_k(n, l, 2, psi1_int);
        default: throw std::invalid_argument("not a polygamma sum identity");
    }
}

std::vector<RhsTerm> psi_sum_rhs(IdentityId id, long n, long l) {
    const SymExpr one(1);
    const SymExpr p0nl = psi0_int(n + l), p0l = psi0_int(l);
    const SymExpr p1nl = psi1_int(n + l), p1l = psi1_int(l);
    const SymExpr sq_nl = p0nl.squared(), sq_l = p0l.squared();
    const long n2 = n * n, n3 = n2 * n, l2 = l * l, l3 = l2 * l;
    // Shared polynomial coefficients of the k and k^2 weighted sums.
    const Q lin_top(n2 + n - l2 + l, 2);
    const Q lin_bottom(l * (l - 1), 2);
    const Q quad_top(2 * n3 + 3 * n2 + n + 2 * l3 - 3 * l2 + l, 6);
    const Q quad_bottom(-l * (2 * l2 - 3 * l + 1), 6);
    switch (id) {
        case IdentityId::A1:
            return {{Q(n + l), p0nl}, {Q(-l), p0l}, {Q(-n), one}};
        case IdentityId::A2:
            return {{lin_top, p0nl}, {lin_bottom, p0l}, {Q(n * (-n + 2 * l - 1), 4), one}};
        case IdentityId::A3:
            return {{quad_top, p0nl},
                    {quad_bottom, p0l},
                    {Q(n * (-4 * n2 + 6 * n * l - 3 * n - 12 * l2 + 12 * l + 1), 36), one}};
        case IdentityId::A4:
            return {{Q(n + l), sq_nl}, {Q(-(2 * n + 2 * l - 1)), p0nl}, {Q(-l), sq_l}, {Q(2 * l - 1), p0l},
                    {Q(2 * n), one}};
        case IdentityId::A5:
            return {{lin_top, sq_nl},
                    {Q(-n2 + 2 * n * l - n + 3 * l2 - 3 * l + 1, 2), p0nl},
                    {lin_bottom, sq_l},
                    {Q(-(3 * l2 - 3 * l + 1), 2), p0l},
                    {Q(n * (n - 6 * l + 3), 4), one}};
        case IdentityId::A6:
            return {{quad_top, sq_nl},
                    {Q(-(4 * n3 - 6 * n2 * l + 3 * n2 + 12 * n * l2 - 12 * n * l - n + 22 * l3 - 33 * l2 + 17 * l - 3),
                       18),
                     p0nl},
                    {quad_bottom, sq_l},
                    {Q(22 * l3 - 33 * l2 + 17 * l - 3, 18), p0l},
                    {Q(n * (8 * n2 - 30 * n * l + 15 * n + 132 * l2 - 132 * l + 25), 108), one}};
        case IdentityId::A7:
            return {{Q(n + l), p1nl}, {Q(-l), p1l}, {Q(1), p0nl}, {Q(-1), p0l}};
        case IdentityId::A8:
            return {{lin_top, p1nl},
                    {lin_bottom, p1l},
                    {Q(-(2 * l - 1), 2), p0nl},
                    {Q(2 * l - 1, 2), p0l},
                    {Q(n, 2), one}};
        case IdentityId::A9:
            return {{quad_top, p1nl},
                    {quad_bottom, p1l},
                    {Q(6 * l2 - 6 * l + 1, 6), p0nl},
                    {Q(-(6 * l2 - 6 * l + 1), 6), p0l},
                    {Q(n * (n - 4 * l + 2), 6), one}};
        default: throw std::invalid_argument("not a polygamma sum identity");
    }
}

SymExpr residual_sum(long m, long n) {
    SymExpr s;
    for (long k = 1; k <= m; ++k) s += Q(1, k) * psi0_int(n - m + k);
    return s;
}

/// Right-hand side of A12 scaled by `scale` (n!/m! for A12 itself).
std::vector<RhsTerm> a12_terms(long m, long n, const Q& scale) {
    const SymExpr p0 = psi0_int(n - m);
    const Q half = scale / Q(2);
    return {{scale, residual_sum(m, n)},
            {half, psi1_int(n - m + 1)},
            {-half, psi1_int(n + 1)},
            {half, psi0_int(n - m + 1).squared()},
            {-half, psi0_int(n + 1).squared()},
            {scale, p0 * psi0_int(n + 1)},
            {-scale, p0 * psi0_int(m + 1)},
            {-scale, p0 * psi0_int(n - m + 1)},
            {scale, p0 * psi0_int(1)}};
}

void require(bool condition, IdentityId id, long a, long b, const char* domain) {
    if (!condition) {
        throw IdentityDomainError(to_string(id) + " at (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") outside its domain " + domain);
    }
}

void check_domain(IdentityId id, long first, long second) {
    if (is_psi_sum(id)) {
        require(first >= 1 && second >= 1, id, first, second, "n, l >= 1");
        return;
    }
    const long m = first, n = second;
    switch (id) {
        case IdentityId::A10:
        case IdentityId::A11:
        case IdentityId::HYP3F2: require(m >= 1 && m <= n, id, m, n, "1 <= m <= n"); return;
        default: require(m >= 1 && n > m, id, m, n, "1 <= m < n"); return;
    }
}

std::vector<BigRational> q_list(std::initializer_list<long> values) {
    std::vector<BigRational> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

}  // namespace

std::string to_string(IdentityId id) {
    for (const auto& [key, name] : kNames) {
        if (key == id) return name;
    }
    return "?";
}

std::optional<IdentityId> identity_from_string(const std::string& name) {
    for (const auto& [key, label] : kNames) {
        if (name == label) return key;
    }
    return std::nullopt;
}

bool is_psi_sum(IdentityId id) { return static_cast<int>(id) <= static_cast<int>(IdentityId::A9); }

const std::vector<IdentityId>& all_identities() {
    static const std::vector<IdentityId> ids = [] {
        std::vector<IdentityId> v;
        for (const auto& [key, name] : kNames) v.push_back(key);
        return v;
    }();
    return ids;
}

BigRational weighted_factorial_sum(long m, long n, int inverse_power) {
    if (m < 0 || n < m) throw std::domain_error("weighted_factorial_sum requires 0 <= m <= n");
    Q sum = 0;
    for (long k = 1; k <= m; ++k) {
        Q term = fact_ratio(n - k, m - k);
        for (int p = 0; p < inverse_power; ++p) term /= Q(k);
        sum += term;
    }
    return sum;
}

BigRational terminating_hypergeometric(std::span<const BigRational> upper, std::span<const BigRational> lower,
                                       const BigRational& z) {
    Q term = 1;
    Q sum = 0;
    for (long j = 0;; ++j) {
        sum += term;
        Q num = z;
        for (const auto& a : upper) num *= a + Q(j);
        if (num.is_zero()) return sum;
        Q den = Q(j + 1);
        for (const auto& b : lower) den *= b + Q(j);
        if (den.is_zero()) throw std::domain_error("hypergeometric lower parameter reached zero");
        term *= num / den;
        if (j > 100000) throw std::domain_error("hypergeometric series does not terminate");
    }
}

SymExpr identity_lhs(IdentityId id, long first, long second) {
    check_domain(id, first, second);
    if (is_psi_sum(id)) return psi_sum_lhs(id, first, second);
    const long m = first, n = second;
    switch (id) {
        case IdentityId::A10: return SymExpr(weighted_factorial_sum(m, n, 0));
        case IdentityId::A11:
        case IdentityId::WY1: return SymExpr(weighted_factorial_sum(m, n, 1));
        case IdentityId::A12:
        case IdentityId::WY2: return SymExpr(weighted_factorial_sum(m, n, 2));
        case IdentityId::MILGRAM: {
            SymExpr s;
            for (long k = 1; k <= m; ++k) s += Q(1, n - m + k) * psi0_int(n - m + k);
            return s;
        }
        case IdentityId::HYP3F2: {
            const auto up = q_list({1, 1, 1 - m});
            const auto low = q_list({2, 1 - n});
            return SymExpr(fact_ratio(n - 1, m - 1) * terminating_hypergeometric(up, low, Q(1)));
        }
        case IdentityId::HYP4F3: {
            const auto up = q_list({1, 1, 1, 1 - m});
            const auto low = q_list({2, 2, 1 - n});
            return SymExpr(terminating_hypergeometric(up, low, Q(1)));
        }
        default: break;
    }
    throw std::invalid_argument("unknown identity");
}

std::vector<RhsTerm> identity_rhs_terms(IdentityId id, long first, long second) {
    check_domain(id, first, second);
    if (is_psi_sum(id)) return psi_sum_rhs(id, first, second);
    const long m = first, n = second;
    switch (id) {
        case IdentityId::A10: return {{fact_ratio(n - 1, m - 1) * Q(n, n - m + 1), SymExpr(1)}};
        case IdentityId::A11:
        case IdentityId::HYP3F2: {
            const Q c = fact_ratio(n, m);
            return {{c, psi0_int(n + 1)}, {-c, psi0_int(n - m + 1)}};
        }
        case IdentityId::A12: return a12_terms(m, n, fact_ratio(n, m));
        case IdentityId::HYP4F3: return a12_terms(m, n, Q(n, m));
        case IdentityId::WY1:
            return {{fact_ratio(n - 1, m), SymExpr(1)},
                    {Q(n, m), SymExpr(weighted_factorial_sum(m - 1, n - 1, 1))}};
        case IdentityId::WY2: {
            const Q c = fact_ratio(n - 1, m) * Q(n - m, m);
            return {{c, psi0_int(n)},
                    {-c, psi0_int(n - m)},
                    {Q(n, m), SymExpr(weighted_factorial_sum(m - 1, n - 1, 2))}};
        }
        case IdentityId::MILGRAM: {
            const Q h(1, 2);
            return {{h, psi1_int(n + 1)},
                    {-h, psi1_int(n - m + 1)},
                    {h, psi0_int(n + 1).squared()},
                    {-h, psi0_int(n - m + 1).squared()}};
        }
        default: break;
    }
    throw std::invalid_argument("unknown identity");
}

IdentityCheckResult check_identity(IdentityId id, long first, long second, std::optional<Perturbation> perturbation) {
    auto terms = identity_rhs_terms(id, first, second);
    if (perturbation) {
        if (perturbation->term_index >= terms.size()) throw std::out_of_range("perturbation term index");
        terms[perturbation->term_index].coefficient += perturbation->delta;
    }
    SymExpr rhs;
    for (const auto& t : terms) rhs += t.coefficient * t.basis;
    SymExpr lhs = identity_lhs(id, first, second);
    const bool equal = (lhs - rhs).is_zero();
    return {id, is_psi_sum(id) ? "n,l" : "m,n", first, second, std::move(lhs), std::move(rhs), equal};
}

IdentityCheckResult check_psi_sum(IdentityId id, long n, long l) {
    if (!is_psi_sum(id)) throw std::invalid_argument("check_psi_sum expects A1..A9");
    return check_identity(id, n, l);
}

IdentityCheckResult check_factorial_sum(IdentityId id, long m, long n) {
    if (id != IdentityId::A10 && id != IdentityId::A11 && id != IdentityId::A12) {
        throw std::invalid_argument("check_factorial_sum expects A10, A11 or A12");
    }
    return check_identity(id, m, n);
}

std::vector<IdentityCheckResult> check_recurrences(long m, long n) {
    return {check_identity(IdentityId::WY1, m, n), check_identity(IdentityId::WY2, m, n)};
}

IdentityCheckResult check_milgram(long m, long n) { return check_identity(IdentityId::MILGRAM, m, n); }

IdentityCheckResult check_hyp4F3(long m, long n) { return check_identity(IdentityId::HYP4F3, m, n); }

std::size_t IdentitySweep::failures() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.equal; }));
}

IdentitySweep sweep_identities(long max, std::optional<std::pair<IdentityId, Perturbation>> mutation) {
    IdentitySweep sweep;
    for (IdentityId id : all_identities()) {
        for (long a = 1; a <= max; ++a) {
            for (long b = 1; b <= max; ++b) {
                try {
                    std::optional<Perturbation> p;
                    if (mutation && mutation->first == id) p = mutation->second;
                    sweep.results.push_back(check_identity(id, a, b, p));
                } catch (const IdentityDomainError&) {
                    ++sweep.skipped;
                }
            }
        }
    }
    return sweep;
}

}  // namespace entvar
