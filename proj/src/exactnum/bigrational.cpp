#include "entvar/bigrational.hpp"

#include <climits>
#include <utility>

namespace entvar {

namespace {

mpz_class from_ll(long long v) {
    mpz_class z;
    // mpz_class has no long long constructor; go through the string path
    // only when the value does not fit a long.
    if (v >= static_cast<long long>(LONG_MIN) && v <= static_cast<long long>(LONG_MAX)) {
        z = static_cast<long>(v);
    } else {
        z.set_str(std::to_string(v), 10);
    }
    return z;
}

}  // namespace

BigRational::BigRational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

BigRational::BigRational(long long value) : value_(from_ll(value)) {}

BigRational::BigRational(long long numerator, long long denominator)
    : BigRational(from_ll(numerator), from_ll(denominator)) {}

BigRational::BigRational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw DivisionByZero();
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

BigRational BigRational::parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (q.get_den() == 0) throw DivisionByZero();
    return BigRational(std::move(q));
}

BigRational BigRational::factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return BigRational(mpq_class(f));
}

BigRational BigRational::factorial_ratio(long n, long k) {
    if (n < 0 || k < 0) throw std::domain_error("factorial of negative integer");
    mpz_class prod = 1;
    if (n >= k) {
        for (long i = k + 1; i <= n; ++i) prod *= i;
        return BigRational(mpq_class(prod));
    }
    for (long i = n + 1; i <= k; ++i) prod *= i;
    return BigRational(mpq_class(mpz_class(1), prod));
}

BigRational BigRational::operator-() const { return BigRational(mpq_class(-value_)); }

BigRational& BigRational::operator+=(const BigRational& rhs) {
    value_ += rhs.value_;
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) throw DivisionByZero();
    value_ /= rhs.value_;
    return *this;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigRational BigRational::pow(unsigned exponent) const {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return BigRational(mpq_class(num, den));
}

std::string BigRational::to_string() const { return value_.get_str(10); }

}  // namespace entvar
