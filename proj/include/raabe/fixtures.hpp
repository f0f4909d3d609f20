#pragma once

// Reference series with known Raabe values and verdicts.

#include "raabe/classify.hpp"
#include "raabe/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace raabe {

struct Fixture {
    std::string name;
    std::string expr;
    /// Expected exact value, as "num/den"; empty when the value is not exact.
    std::string exact;
    Verdict verdict;
};

const std::vector<Fixture>& reference_fixtures();

struct FixtureResult {
    const Fixture* fixture = nullptr;
    bool passed = false;
    std::string detail;
};

/// Runs every reference fixture through the symbolic pipeline.
std::vector<FixtureResult> run_fixtures(const AnalysisOptions& options = {});

}  // namespace raabe
