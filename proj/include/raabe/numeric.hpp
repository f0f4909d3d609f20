#pragma once

// Numeric Raabe value: r_n = n (|a_n / a_(n+1)| - 1) and the Schlomilch form
// n log |a_n / a_(n+1)|, sampled on n = 2^k and Richardson-extrapolated.

#include "raabe/expr.hpp"
#include "raabe/raabe_value.hpp"

#include <cstdint>
#include <vector>

namespace raabe {

struct EstimatorConfig {
    int precision_bits = 256;
    int min_exponent = 10;  // first grid point 2^min_exponent
    int max_exponent = 20;  // last grid point 2^max_exponent
    int richardson_levels = 4;
    int oscillation_window = 64;
    double tolerance = 1e-9;
    unsigned threads = 1;

    std::vector<std::int64_t> grid() const;
    /// Throws Error when an invariant is violated.
    void validate() const;
};

struct Sample {
    std::int64_t n;
    BigFloat value;
};

/// |a_n / a_(n+1)| at each n, evaluated without forming large factorials.
std::vector<Sample> ratio_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                   unsigned threads = 1);
std::vector<Sample> raabe_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                   unsigned threads = 1);
std::vector<Sample> schlomilch_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                        unsigned threads = 1);

/// True when the consecutive samples alternate around their trend with
/// non-decreasing amplitude (differences larger than `tolerance`).
bool detect_oscillation(const std::vector<Sample>& consecutive, double tolerance);

/// Richardson extrapolation in powers of 1/n over a doubling grid. `tail`
/// holds consecutive-index samples for the oscillation check and may be empty.
/// Throws InsufficientSamples with fewer than levels + 1 grid points.
RaabeValue extrapolate(const std::vector<Sample>& samples, int levels, const std::vector<Sample>& tail = {},
                       double tolerance = 1e-9);

struct NumericDiagnostics {
    RaabeValue raabe;       // extrapolated r_n
    RaabeValue schlomilch;  // extrapolated Schlomilch form
    bool raw_decreasing = false;
};

RaabeValue estimate_raabe(const Term& term, const EstimatorConfig& config = {});
RaabeValue estimate_raabe(const Term& term, const EstimatorConfig& config, NumericDiagnostics& diagnostics);

/// lim |a_n / a_(n+1)| by extrapolating the ratio sequence.
RatioLimit estimate_ratio_limit(const Term& term, const EstimatorConfig& config = {});

struct TableRow {
    std::int64_t n;
    double raabe;
    double schlomilch;
};

std::vector<TableRow> numeric_table(const Term& term, const EstimatorConfig& config = {});

}  // namespace raabe
