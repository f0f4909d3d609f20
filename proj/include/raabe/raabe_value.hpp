#pragma once

#include "raabe/numbers.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace raabe {

/// A limit of |a_n / a_(n+1)| (or its reciprocal), exact when known.
struct RatioLimit {
    bool infinite = false;
    std::optional<Rational> exact;
    double approx = 0.0;
    double error_bound = 0.0;

    static RatioLimit of(const Rational& q);
    static RatioLimit infinity();
    static RatioLimit numeric(double value, double error_bound);

    RatioLimit reciprocal() const;
    std::string to_string() const;
    friend bool operator==(const RatioLimit&, const RatioLimit&) = default;
};

enum class UndefinedReason { RatioLimitNotOne, OscillatingRatio, NotApplicable };

struct ExactValue {
    Rational p;
    friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

struct NumericValue {
    double estimate = 0.0;
    double error_bound = 0.0;
    /// False when the sequence would not extrapolate and the estimate is the
    /// last raw sample with a wide bound.
    bool extrapolated = true;
    friend bool operator==(const NumericValue&, const NumericValue&) = default;
};

struct UndefinedValue {
    UndefinedReason reason = UndefinedReason::NotApplicable;
    std::string detail;
    /// lim |a_n / a_(n+1)| for RatioLimitNotOne.
    std::optional<RatioLimit> ratio_limit;
    friend bool operator==(const UndefinedValue&, const UndefinedValue&) = default;
};

using RaabeValue = std::variant<ExactValue, NumericValue, UndefinedValue>;

inline RaabeValue exact_value(Rational p) { return ExactValue{std::move(p)}; }
inline RaabeValue numeric_value(double estimate, double error_bound, bool extrapolated = true)
{
    return NumericValue{estimate, error_bound, extrapolated};
}
inline RaabeValue undefined_value(UndefinedReason reason, std::string detail,
                                  std::optional<RatioLimit> limit = std::nullopt)
{
    return UndefinedValue{reason, std::move(detail), std::move(limit)};
}

bool is_exact(const RaabeValue& v);
bool is_defined(const RaabeValue& v);

/// [lower, upper] of a defined value; a point for Exact.
std::pair<double, double> interval(const RaabeValue& v);

std::string to_string(UndefinedReason r);
UndefinedReason undefined_reason_from_string(const std::string& s);
std::string to_string(const RaabeValue& v);

}  // namespace raabe
