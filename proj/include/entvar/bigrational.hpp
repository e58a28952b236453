#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace entvar {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("rational division by zero") {}
};

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class; every public constructor and
/// operator leaves the value canonical.
class BigRational {
public:
    BigRational() = default;
    BigRational(long long value);  // NOLINT(google-explicit-constructor)
    BigRational(long long numerator, long long denominator);
    BigRational(const mpz_class& numerator, const mpz_class& denominator);

    /// Parses "p" or "p/q" (decimal).
    static BigRational parse(const std::string& text);

    static BigRational factorial(long n);
    /// n!/k! for n, k >= 0.
    static BigRational factorial_ratio(long n, long k);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    BigRational operator-() const;
    BigRational& operator+=(const BigRational& rhs);
    BigRational& operator-=(const BigRational& rhs);
    BigRational& operator*=(const BigRational& rhs);
    BigRational& operator/=(const BigRational& rhs);

    friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
    friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
    friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
    friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

    BigRational pow(unsigned exponent) const;

    double to_double() const { return value_.get_d(); }
    std::string to_string() const;

    const mpq_class& raw() const { return value_; }

private:
    explicit BigRational(mpq_class value);

    mpq_class value_{0};
};

}  // namespace entvar
