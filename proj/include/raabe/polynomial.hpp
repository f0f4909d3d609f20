#pragma once

#include "raabe/numbers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace raabe {

/// Dense univariate polynomial in n over the rationals. Coefficients are
/// stored lowest degree first with no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
    explicit Polynomial(std::vector<Rational> coeffs);

    static Polynomial variable();
    static Polynomial monomial(int degree, const Rational& coeff);
    /// a*n + b
    static Polynomial linear(const Rational& a, const Rational& b);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    Rational coeff(int i) const;
    Rational leading() const;
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    Rational operator()(const Rational& x) const;
    BigFloat operator()(const BigFloat& x) const;
    long double eval_ld(long double x) const;

    /// p(n + s)
    Polynomial shifted(const Rational& s) const;
    Polynomial pow(unsigned k) const;
    Polynomial monic() const;
    Polynomial negated() const;

    /// All coefficients integers with gcd 1 and the same sign pattern; returns
    /// (scale, primitive) with *this == scale * primitive.
    std::pair<Rational, Polynomial> primitive_part() const;
    bool has_integer_coeffs() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division; divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
    /// Monic gcd (zero only when both inputs are zero).
    static Polynomial gcd(Polynomial a, Polynomial b);

    std::string to_string(const std::string& var = "n") const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

/// Fujiwara-type bound: every complex root r satisfies |r| < bound. Requires degree >= 1.
Rational root_bound(const Polynomial& p);
/// Every positive real root r satisfies r < bound. Requires degree >= 1.
Rational positive_root_bound(const Polynomial& p);

/// Least n0 >= start such that sign(p(n)) == sign(leading(p)) for every
/// integer n >= n0. Scans exactly up to the root bound; nullopt when that
/// bound exceeds `scan_limit`. p must be nonzero.
std::optional<std::int64_t> sign_stable_from(const Polynomial& p, std::int64_t start,
                                             std::int64_t scan_limit = 10'000'000);

/// True iff p(n) > 0 for every integer n >= start (certified exactly).
bool positive_from(const Polynomial& p, std::int64_t start, std::int64_t scan_limit = 10'000'000);

}  // namespace raabe
