#pragma once

// Brute-force evidence: partial sums, alternating brackets and growth slopes.
// Independent of the rule engine and the Raabe estimator.

#include "raabe/classify.hpp"
#include "raabe/expr.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace raabe {

struct PartialSum {
    std::int64_t m;
    Value sum;
};

/// S_m for m = start..m_max. Hypergeometric terms advance by their ratio.
std::vector<PartialSum> partial_sums(const Term& term, std::int64_t m_max, EvalMode mode);

struct Bracket {
    std::int64_t m = 0;
    double lower = 0.0;  // rounded down
    double upper = 0.0;  // rounded up
    double width = 0.0;  // |a_(m+1)|

    bool contains(double x) const { return lower <= x && x <= upper; }
    bool contains(const Bracket& inner) const { return lower <= inner.lower && inner.upper <= upper; }
};

/// Ordered (S_m, S_(m+1)); throws NotAlternating or NotDecreasing.
Bracket alternating_bracket(const Term& term, std::int64_t m, int precision_bits = 128);

struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0;
    /// (T(hi) - T(hi/10)) / (T(hi/10) - T(hi/100)); 10^s for T ~ m^s.
    double decade_ratio = 0.0;
    /// Increments per decade roughly constant: T grows like log m.
    bool log_growth = false;
};

/// Least-squares slope of log T_m against log m, T_m = sum |a_n|, over the top
/// two decades of [lo, hi]. Requires hi >= 100 lo.
SlopeFit abs_growth_slope(const Term& term, std::int64_t lo, std::int64_t hi, int precision_bits = 128);

/// Least-squares slope of log |a_n| against log n over the top two decades.
double term_magnitude_slope(const Term& term, std::int64_t lo, std::int64_t hi, int precision_bits = 128);

struct OracleConfig {
    std::int64_t slope_lo = 1000;
    std::int64_t slope_hi = 100000;
    std::int64_t bracket_m = 10000;
    int precision_bits = 128;
};

struct OracleReport {
    std::vector<std::pair<std::int64_t, double>> partial_sum_samples;
    std::optional<Bracket> bracket;
    std::optional<SlopeFit> abs_growth;
    double term_slope = 0.0;
    Classification empirical;
};

OracleReport empirical_classify(const Term& term, const OracleConfig& config = {});

}  // namespace raabe
