#include "raabe/numbers.hpp"

#include "raabe/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <utility>

namespace raabe {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw DomainError("division by zero");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

std::string to_string(const Integer& z)
{
    return z.get_str();
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

Rational parse_rational(const std::string& text)
{
    std::string s = text;
    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    const auto slash = s.find('/', i);
    if (slash != std::string::npos) {
        Integer num(s.substr(i, slash - i), 10);
        Integer den(s.substr(slash + 1), 10);
        Rational q = make_rational(num, den);
        return negative ? Rational(-q) : q;
    }

    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw std::invalid_argument("not a number: " + text);
    }
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        exponent = std::stol(s.substr(i + 1));
        i = s.size();
    }
    if (i != s.size()) {
        throw std::invalid_argument("not a number: " + text);
    }
    Rational q{Integer(digits, 10)};
    const long shift = exponent - frac_digits;
    q *= pow_int(Rational(10), shift);
    return negative ? Rational(-q) : q;
}

bool exact_root(const Rational& x, unsigned long q, Rational& out)
{
    if (q == 1) {
        out = x;
        return true;
    }
    if (x < 0 && q % 2 == 0) {
        return false;
    }
    Integer num = abs(x.get_num());
    Integer den = x.get_den();
    Integer rnum, rden;
    if (mpz_root(rnum.get_mpz_t(), num.get_mpz_t(), q) == 0) {
        return false;
    }
    if (mpz_root(rden.get_mpz_t(), den.get_mpz_t(), q) == 0) {
        return false;
    }
    if (x < 0) {
        rnum = -rnum;
    }
    out = Rational(rnum, rden);
    out.canonicalize();
    return true;
}

Rational pow_int(const Rational& x, long k)
{
    if (k == 0) {
        return Rational(1);
    }
    if (x == 0) {
        if (k < 0) {
            throw DomainError("zero raised to a negative power");
        }
        return Rational(0);
    }
    const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
    return k > 0 ? make_rational(num, den) : make_rational(den, num);
}

double to_double(const Rational& q)
{
    // mpq_get_d truncates; go through MPFR for correct rounding.
    return BigFloat(q, 64).to_double();
}

// ---------------------------------------------------------------------------

BigFloat::BigFloat(mpfr_prec_t bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& value, mpfr_prec_t bits)
{
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept
{
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(value_);
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t bits)
{
    BigFloat out(bits);
    if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a floating-point literal: " + text);
    }
    return out;
}

BigFloat BigFloat::with_precision(mpfr_prec_t bits) const
{
    BigFloat out(bits);
    mpfr_set(out.value_, value_, MPFR_RNDN);
    return out;
}

double BigFloat::to_double() const
{
    return mpfr_get_d(value_, MPFR_RNDN);
}

long double BigFloat::to_long_double() const
{
    return mpfr_get_ld(value_, MPFR_RNDN);
}

std::string BigFloat::to_string(int digits) const
{
    if (!is_finite()) {
        return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    }
    if (is_zero()) {
        return "0";
    }
    char* raw = nullptr;
    const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    mpfr_asprintf(&raw, fmt.c_str(), value_);
    std::unique_ptr<char, void (*)(char*)> holder(raw, [](char* p) { mpfr_free_str(p); });
    return std::string(raw);
}

namespace {

mpfr_prec_t joint_precision(const BigFloat& a, const BigFloat& b)
{
    return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs)
{
    *this = *this + rhs;
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs)
{
    *this = *this - rhs;
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs)
{
    *this = *this * rhs;
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs)
{
    *this = *this / rhs;
    return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b)
{
    BigFloat out(joint_precision(a, b));
    mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b)
{
    BigFloat out(joint_precision(a, b));
    mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b)
{
    BigFloat out(joint_precision(a, b));
    mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b)
{
    BigFloat out(joint_precision(a, b));
    mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a)
{
    BigFloat out(a.precision());
    mpfr_neg(out.value_, a.value_, MPFR_RNDN);
    return out;
}

BigFloat abs(const BigFloat& x)
{
    BigFloat out(x.precision());
    mpfr_abs(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat sqrt(const BigFloat& x)
{
    BigFloat out(x.precision());
    mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat log(const BigFloat& x)
{
    BigFloat out(x.precision());
    mpfr_log(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat log1p(const BigFloat& x)
{
    BigFloat out(x.precision());
    mpfr_log1p(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat exp(const BigFloat& x)
{
    BigFloat out(x.precision());
    mpfr_exp(out.get(), x.get(), MPFR_RNDN);
    return out;
}

BigFloat pow(const BigFloat& x, const Rational& k)
{
    BigFloat out(x.precision());
    if (is_integer(k)) {
        mpfr_pow_z(out.get(), x.get(), k.get_num_mpz_t(), MPFR_RNDN);
        return out;
    }
    if (x.sign() < 0) {
        throw DomainError("non-integer power of a negative number");
    }
    if (!k.get_den().fits_ulong_p()) {
        throw DomainError("exponent denominator too large");
    }
    // x^(p/q) = (x^(1/q))^p with a few guard bits for the two roundings.
    BigFloat root(x.precision() + 16);
    mpfr_rootn_ui(root.get(), x.get(), k.get_den().get_ui(), MPFR_RNDN);
    BigFloat powed(x.precision() + 16);
    mpfr_pow_z(powed.get(), root.get(), k.get_num_mpz_t(), MPFR_RNDN);
    mpfr_set(out.get(), powed.get(), MPFR_RNDN);
    return out;
}

BigFloat factorial(unsigned long k, mpfr_prec_t bits)
{
    BigFloat out(bits);
    if (k <= 512) {
        mpfr_fac_ui(out.get(), k, MPFR_RNDN);
        return out;
    }
    // mpfr_fac_ui multiplies k terms; the gamma function is asymptotic.
    BigFloat x(static_cast<long>(k), bits + 16);
    x += BigFloat(1L, bits + 16);
    mpfr_gamma(out.get(), x.get(), MPFR_RNDN);
    return out;
}

}  // namespace raabe
