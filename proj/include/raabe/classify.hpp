#pragma once

// Convergence verdicts from a Raabe value and a sign pattern.

#include "raabe/expr.hpp"
#include "raabe/numeric.hpp"
#include "raabe/raabe_value.hpp"

#include <optional>
#include <string>

namespace raabe {

enum class Verdict {
    AbsolutelyConvergent,
    ConditionallyConvergent,
    Divergent,
    ConditionallyConvergentOrDivergent,
    ConvergentTypeUnknown,
    Inconclusive,
};

enum class Theorem { RaabesTest, RaabesAlternatingSeriesTest, RatioTest, None };

enum class Confidence { TheoremBacked, Empirical };

enum class PKind { Exact, Numeric, Undefined };

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    Theorem theorem = Theorem::None;
    PKind p_kind = PKind::Undefined;
    /// Numeric p whose interval touches 0 or 1.
    bool boundary = false;
    std::string reason;
    Confidence confidence = Confidence::TheoremBacked;

    friend bool operator==(const Classification&, const Classification&) = default;
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);
std::string to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);
std::string to_string(PKind k);
PKind p_kind_from_string(const std::string& s);
std::string to_string(Confidence c);
Confidence confidence_from_string(const std::string& s);

/// True when a series with behavior `actual` is consistent with verdict `claimed`
/// (e.g. Divergent is consistent with ConditionallyConvergentOrDivergent).
bool compatible(Verdict claimed, Verdict actual);
/// True when two verdicts can both hold for the same series.
bool consistent(Verdict a, Verdict b);

struct RatioPrecheck {
    enum class Outcome { Proceed, DecidedByRatioTest };
    Outcome outcome = Outcome::Proceed;
    /// lim |a_(n+1) / a_n|, when determined.
    std::optional<RatioLimit> limit;
    std::optional<Verdict> verdict;
    /// Set when the limit could not be determined.
    bool warning = false;
    std::string note;
};

RatioPrecheck ratio_precheck(const Term& term, const EstimatorConfig& config = {});

Classification classify(const RaabeValue& p, const SignPattern& sign);

enum class TermDiagnosis { TermsVanish, TermsUnbounded, Unknown };

TermDiagnosis term_limit_diagnosis(const RaabeValue& p);
std::string to_string(TermDiagnosis d);
TermDiagnosis term_diagnosis_from_string(const std::string& s);

}  // namespace raabe
