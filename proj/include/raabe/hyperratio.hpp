#pragma once

// Exact ratio |a_n / a_(n+1)| for hypergeometric terms.

#include "raabe/expr.hpp"
#include "raabe/polynomial.hpp"
#include "raabe/raabe_value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace raabe {

/// P(n)/Q(n) with integer coefficients, gcd(P, Q) = 1, content(P) and
/// content(Q) coprime and lc(Q) > 0. Equals |a_n / a_(n+1)| for n >= valid_from.
struct RationalFn {
    Polynomial num;
    Polynomial den;
    std::int64_t valid_from = 1;

    Rational operator()(const Rational& n) const { return num(n) / den(n); }
    std::string to_string() const;
    friend bool operator==(const RationalFn& a, const RationalFn& b)
    {
        return a.num == b.num && a.den == b.den;
    }
};

struct NotHypergeometric {
    std::string reason;
};

using RatioResult = std::variant<RationalFn, NotHypergeometric>;

RatioResult ratio_rational_fn(const Term& term);

/// Signed a_n / a_(n+1) as an unreduced (numerator, denominator) pair, or
/// nullopt when the term is not hypergeometric.
std::optional<std::pair<Polynomial, Polynomial>> signed_ratio(const Expr& e);

/// Exact p from the two leading coefficients, or Undefined(RatioLimitNotOne)
/// carrying lim P/Q.
RaabeValue raabe_from_ratio(const RationalFn& r);

/// lim P/Q as n -> infinity.
RatioLimit ratio_limit(const RationalFn& r);

}  // namespace raabe
