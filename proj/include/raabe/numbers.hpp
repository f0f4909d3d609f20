#pragma once

// Exact rationals (GMP) and a precision-carrying MPFR float.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace raabe {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
bool is_integer(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const Rational& q);  // "a" or "a/b"

/// Parses "123", "-7/3", or a decimal literal such as "0.125" / "1e-3" exactly.
Rational parse_rational(const std::string& text);

/// Exact q-th root when `x` is a perfect power; false otherwise. Requires q >= 1.
bool exact_root(const Rational& x, unsigned long q, Rational& out);

/// x^k for integer k (x != 0 when k < 0).
Rational pow_int(const Rational& x, long k);

double to_double(const Rational& q);

/// MPFR value with its own precision. Binary operations round to the larger
/// of the two operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 64);
    BigFloat(long value, mpfr_prec_t bits);
    BigFloat(double value, mpfr_prec_t bits);
    BigFloat(const Rational& value, mpfr_prec_t bits);
    BigFloat(const Integer& value, mpfr_prec_t bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat parse(const std::string& text, mpfr_prec_t bits);

    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
    /// Rounds to a new precision.
    BigFloat with_precision(mpfr_prec_t bits) const;

    double to_double() const;
    long double to_long_double() const;
    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const;

    int sign() const noexcept { return mpfr_sgn(value_); }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }

    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get() noexcept { return value_; }

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat exp(const BigFloat& x);
/// x^k for rational k; x must be positive unless k is an integer.
BigFloat pow(const BigFloat& x, const Rational& k);
/// k! correctly rounded at `bits`.
BigFloat factorial(unsigned long k, mpfr_prec_t bits);

}  // namespace raabe
