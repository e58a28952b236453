#include "entvar/symexpr.hpp"

#include <sstream>
#include <stdexcept>

namespace entvar {

namespace {

// 110 significant digits each.
constexpr const char* kEulerGamma =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463";
constexpr const char* kPiSquared =
    "9.8696044010893586188344909998761511353136994072407906264133493762200448224192052430017734037185522318240";

void check_digits(unsigned digits) {
    if (digits < 15 || digits > kMaxEvalDigits) {
        throw std::domain_error("precision_digits must lie in [15, " + std::to_string(kMaxEvalDigits) + "]");
    }
}

HighPrecision round_to_digits(const HighPrecision& x, unsigned digits) {
    return HighPrecision(x.str(static_cast<std::streamsize>(digits) - 1, std::ios_base::scientific));
}

HighPrecision to_high_precision(const BigRational& q) {
    HighPrecision num(q.numerator().get_str());
    HighPrecision den(q.denominator().get_str());
    return num / den;
}

std::string monomial_suffix(const Monomial& e) {
    std::string s;
    auto append = [&s](const char* sym, int deg) {
        if (deg == 0) return;
        if (!s.empty()) s += "*";
        s += sym;
        if (deg > 1) s += "^" + std::to_string(deg);
    };
    append("gamma", e.gamma_deg);
    if (e.pi2_deg > 0) {
        if (!s.empty()) s += "*";
        s += "pi^" + std::to_string(2 * e.pi2_deg);
    }
    return s;
}

}  // namespace

HighPrecision euler_gamma(unsigned precision_digits) {
    check_digits(precision_digits);
    return round_to_digits(HighPrecision(kEulerGamma), precision_digits);
}

HighPrecision pi_squared(unsigned precision_digits) {
    check_digits(precision_digits);
    return round_to_digits(HighPrecision(kPiSquared), precision_digits);
}

SymExpr::SymExpr(BigRational constant) { add_term({0, 0}, constant); }

SymExpr SymExpr::gamma() { return monomial(1, {1, 0}); }

SymExpr SymExpr::pi_squared() { return monomial(1, {0, 1}); }

SymExpr SymExpr::monomial(BigRational coefficient, Monomial exponents) {
    if (exponents.gamma_deg < 0 || exponents.pi2_deg < 0) {
        throw std::invalid_argument("negative monomial exponent");
    }
    SymExpr e;
    e.add_term(exponents, coefficient);
    return e;
}

BigRational SymExpr::coefficient(Monomial exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? BigRational(0) : it->second;
}

int SymExpr::gamma_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.gamma_deg);
    return d;
}

int SymExpr::pi2_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.pi2_deg);
    return d;
}

void SymExpr::add_term(const Monomial& exponents, const BigRational& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
    if (inserted) return;
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
}

SymExpr SymExpr::operator-() const {
    SymExpr out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

SymExpr& SymExpr::operator+=(const SymExpr& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

SymExpr& SymExpr::operator*=(const SymExpr& rhs) {
    SymExpr out;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            out.add_term({ea.gamma_deg + eb.gamma_deg, ea.pi2_deg + eb.pi2_deg}, ca * cb);
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

SymExpr& SymExpr::operator*=(const BigRational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
}

SymExpr& SymExpr::operator/=(const BigRational& scalar) {
    if (scalar.is_zero()) throw DivisionByZero();
    for (auto& [e, c] : terms_) c /= scalar;
    return *this;
}

HighPrecision SymExpr::evaluate(unsigned precision_digits) const {
    check_digits(precision_digits);
    // Summed at the full working precision; the guard digits absorb cancellation between monomials.
    const HighPrecision g(kEulerGamma);
    const HighPrecision p(kPiSquared);
    HighPrecision sum = 0;
    for (const auto& [e, c] : terms_) {
        HighPrecision term = to_high_precision(c);
        for (int i = 0; i < e.gamma_deg; ++i) term *= g;
        for (int j = 0; j < e.pi2_deg; ++j) term *= p;
        sum += term;
    }
    return round_to_digits(sum, precision_digits);
}

double SymExpr::to_double() const { return static_cast<double>(evaluate(30)); }

std::string SymExpr::to_string() const {
    if (terms_.empty()) return "0";
    // Constant first, then ascending pi^2 degree, then ascending gamma degree.
    std::map<std::pair<int, int>, const Terms::value_type*> ordered;
    for (const auto& t : terms_) ordered.emplace(std::pair{t.first.pi2_deg, t.first.gamma_deg}, &t);
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, term] : ordered) {
        const auto& [e, c] = *term;
        const bool negative = c.sign() < 0;
        const BigRational magnitude = negative ? -c : c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        const std::string suffix = monomial_suffix(e);
        if (suffix.empty()) {
            os << magnitude.to_string();
        } else if (magnitude == BigRational(1)) {
            os << suffix;
        } else {
            os << magnitude.to_string() << "*" << suffix;
        }
        first = false;
    }
    return os.str();
}

}  // namespace entvar
