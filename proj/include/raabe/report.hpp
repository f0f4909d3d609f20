#pragma once

// The full analysis pipeline and its JSON / text renderings.

#include "raabe/classify.hpp"
#include "raabe/numeric.hpp"
#include "raabe/oracle.hpp"
#include "raabe/rules.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace raabe {

inline constexpr const char* kVersion = "0.1.0";

struct AnalysisOptions {
    bool numeric_only = false;
    bool symbolic_only = false;
    /// Run the numeric estimator alongside an exact symbolic result.
    bool cross_check = true;
    bool with_table = false;
    bool with_oracle = false;
    EstimatorConfig estimator;
    OracleConfig oracle;
};

struct AnalysisReport {
    std::string input;
    std::string normalized;
    std::int64_t start_index = 1;
    bool start_certified = true;
    RatioPrecheck precheck;
    RaabeValue raabe;
    std::optional<RaabeValue> cross_check;
    std::optional<TraceNode> trace;
    SignPattern sign;
    Classification classification;
    TermDiagnosis diagnosis = TermDiagnosis::Unknown;
    std::optional<std::vector<TableRow>> table;
    std::optional<OracleReport> oracle;
    std::string version = kVersion;
};

/// parse -> sign_split -> ratio_precheck -> derive_value / estimate_raabe ->
/// classify (-> oracle). Parse and domain errors propagate.
AnalysisReport analyze(const std::string& text, const AnalysisOptions& options = {});

nlohmann::ordered_json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const RaabeValue& v);
RaabeValue raabe_value_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const Classification& c);
nlohmann::ordered_json to_json(const OracleReport& o);
nlohmann::ordered_json to_json(const std::vector<TableRow>& rows);

std::string render_text(const AnalysisReport& report, bool show_trace = false);
std::string render_trace(const TraceNode& trace);

}  // namespace raabe
