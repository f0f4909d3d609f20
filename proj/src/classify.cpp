#include "raabe/classify.hpp"

#include "raabe/errors.hpp"
#include "raabe/hyperratio.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace raabe {

namespace {

constexpr std::array kVerdicts{
    std::pair{Verdict::AbsolutelyConvergent, "AbsolutelyConvergent"},
    std::pair{Verdict::ConditionallyConvergent, "ConditionallyConvergent"},
    std::pair{Verdict::Divergent, "Divergent"},
    std::pair{Verdict::ConditionallyConvergentOrDivergent, "ConditionallyConvergentOrDivergent"},
    std::pair{Verdict::ConvergentTypeUnknown, "ConvergentTypeUnknown"},
    std::pair{Verdict::Inconclusive, "Inconclusive"},
};

constexpr std::array kTheorems{
    std::pair{Theorem::RaabesTest, "RaabesTest"},
    std::pair{Theorem::RaabesAlternatingSeriesTest, "RaabesAlternatingSeriesTest"},
    std::pair{Theorem::RatioTest, "RatioTest"},
    std::pair{Theorem::None, "None"},
};

constexpr std::array kPKinds{
    std::pair{PKind::Exact, "Exact"},
    std::pair{PKind::Numeric, "Numeric"},
    std::pair{PKind::Undefined, "Undefined"},
};

constexpr std::array kConfidences{
    std::pair{Confidence::TheoremBacked, "TheoremBacked"},
    std::pair{Confidence::Empirical, "Empirical"},
};

constexpr std::array kDiagnoses{
    std::pair{TermDiagnosis::TermsVanish, "TermsVanish"},
    std::pair{TermDiagnosis::TermsUnbounded, "TermsUnbounded"},
    std::pair{TermDiagnosis::Unknown, "Unknown"},
};

template <class Table, class E>
std::string name_of(const Table& table, E value)
{
    for (const auto& [v, name] : table) {
        if (v == value) {
            return name;
        }
    }
    return "?";
}

template <class Table>
auto value_of(const Table& table, const std::string& name, const char* what)
{
    for (const auto& [v, n] : table) {
        if (name == n) {
            return v;
        }
    }
    throw Error(std::string("unknown ") + what + ": " + name);
}

// Possible true behaviors admitted by a verdict: bit 0 absolute, 1 conditional, 2 divergent.
unsigned truth_set(Verdict v)
{
    switch (v) {
    case Verdict::AbsolutelyConvergent: return 0b001;
    case Verdict::ConditionallyConvergent: return 0b010;
    case Verdict::Divergent: return 0b100;
    case Verdict::ConditionallyConvergentOrDivergent: return 0b110;
    case Verdict::ConvergentTypeUnknown: return 0b011;
    case Verdict::Inconclusive: break;
    }
    return 0b111;
}

Classification make(Verdict v, Theorem t, PKind k, std::string reason, bool boundary = false)
{
    Classification c;
    c.verdict = v;
    c.theorem = t;
    c.p_kind = k;
    c.boundary = boundary;
    c.reason = std::move(reason);
    return c;
}

// Verdict from lim |a_n / a_(n+1)| = L: the Ratio Test looks at 1/L.
std::optional<Verdict> ratio_test_verdict(const RatioLimit& backward)
{
    if (backward.infinite) {
        return Verdict::AbsolutelyConvergent;
    }
    if (backward.exact) {
        if (*backward.exact > 1) {
            return Verdict::AbsolutelyConvergent;
        }
        if (*backward.exact < 1) {
            return Verdict::Divergent;
        }
        return std::nullopt;
    }
    if (backward.approx - backward.error_bound > 1.0) {
        return Verdict::AbsolutelyConvergent;
    }
    if (backward.approx + backward.error_bound < 1.0) {
        return Verdict::Divergent;
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(Verdict v) { return name_of(kVerdicts, v); }
Verdict verdict_from_string(const std::string& s) { return value_of(kVerdicts, s, "verdict"); }
std::string to_string(Theorem t) { return name_of(kTheorems, t); }
Theorem theorem_from_string(const std::string& s) { return value_of(kTheorems, s, "theorem"); }
std::string to_string(PKind k) { return name_of(kPKinds, k); }
PKind p_kind_from_string(const std::string& s) { return value_of(kPKinds, s, "p kind"); }
std::string to_string(Confidence c) { return name_of(kConfidences, c); }
Confidence confidence_from_string(const std::string& s) { return value_of(kConfidences, s, "confidence"); }
std::string to_string(TermDiagnosis d) { return name_of(kDiagnoses, d); }
TermDiagnosis term_diagnosis_from_string(const std::string& s) { return value_of(kDiagnoses, s, "diagnosis"); }

bool compatible(Verdict claimed, Verdict actual)
{
    return (truth_set(claimed) & truth_set(actual)) == truth_set(actual);
}

bool consistent(Verdict a, Verdict b)
{
    return (truth_set(a) & truth_set(b)) != 0;
}

RatioPrecheck ratio_precheck(const Term& term, const EstimatorConfig& config)
{
    RatioPrecheck out;
    const RatioResult r = ratio_rational_fn(term);
    if (const auto* fn = std::get_if<RationalFn>(&r)) {
        const RatioLimit backward = ratio_limit(*fn);
        out.limit = backward.reciprocal();
        out.verdict = ratio_test_verdict(backward);
        out.note = "exact ratio " + fn->to_string();
    } else {
        try {
            const RatioLimit backward = estimate_ratio_limit(term, config);
            const RatioLimit forward = backward.reciprocal();
            out.limit = forward;
            const double gap = forward.infinite ? INFINITY : std::abs(forward.approx - 1.0);
            if (gap > std::max(10.0 * forward.error_bound, 1e-6)) {
                out.verdict = ratio_test_verdict(backward);
            } else if (forward.error_bound > 1e-6) {
                out.warning = true;
                out.note = "ratio limit not resolved numerically";
            }
        } catch (const Error& e) {
            out.warning = true;
            out.note = e.what();
        }
    }
    if (out.verdict) {
        out.outcome = RatioPrecheck::Outcome::DecidedByRatioTest;
    }
    return out;
}

Classification classify(const RaabeValue& p, const SignPattern& sign)
{
    const bool alternating = sign.is_alternating();
    if (const auto* e = std::get_if<ExactValue>(&p)) {
        const Rational& v = e->p;
        if (v > 1) {
            return make(Verdict::AbsolutelyConvergent, Theorem::RaabesTest, PKind::Exact, "p > 1");
        }
        if (v < 0) {
            return make(Verdict::Divergent, Theorem::RaabesTest, PKind::Exact, "p < 0");
        }
        if (v == 1) {
            if (alternating) {
                return make(Verdict::ConvergentTypeUnknown, Theorem::RaabesAlternatingSeriesTest, PKind::Exact,
                            "p = 1 with alternating sign");
            }
            return make(Verdict::Inconclusive, Theorem::RaabesTest, PKind::Exact, "p = 1 gives no information");
        }
        if (v > 0 && alternating) {
            return make(Verdict::ConditionallyConvergent, Theorem::RaabesAlternatingSeriesTest, PKind::Exact,
                        "0 < p < 1 with alternating sign");
        }
        return make(Verdict::ConditionallyConvergentOrDivergent, Theorem::RaabesTest, PKind::Exact, "0 <= p < 1");
    }
    if (const auto* n = std::get_if<NumericValue>(&p)) {
        const double lo = n->estimate - n->error_bound;
        const double hi = n->estimate + n->error_bound;
        if ((lo <= 0.0 && hi >= 0.0) || (lo <= 1.0 && hi >= 1.0)) {
            return make(Verdict::Inconclusive, Theorem::None, PKind::Numeric,
                        "error interval reaches a decision boundary", true);
        }
        if (lo > 1.0) {
            return make(Verdict::AbsolutelyConvergent, Theorem::RaabesTest, PKind::Numeric, "p > 1");
        }
        if (hi < 0.0) {
            return make(Verdict::Divergent, Theorem::RaabesTest, PKind::Numeric, "p < 0");
        }
        if (alternating) {
            return make(Verdict::ConditionallyConvergent, Theorem::RaabesAlternatingSeriesTest, PKind::Numeric,
                        "0 < p < 1 with alternating sign");
        }
        return make(Verdict::ConditionallyConvergentOrDivergent, Theorem::RaabesTest, PKind::Numeric, "0 < p < 1");
    }
    const auto& u = std::get<UndefinedValue>(p);
    if (u.reason == UndefinedReason::RatioLimitNotOne && u.ratio_limit) {
        if (auto v = ratio_test_verdict(*u.ratio_limit)) {
            return make(*v, Theorem::RatioTest, PKind::Undefined,
                        "ratio limit " + u.ratio_limit->reciprocal().to_string() + " decides");
        }
    }
    return make(Verdict::Inconclusive, Theorem::None, PKind::Undefined, to_string(u.reason) + ": " + u.detail);
}

TermDiagnosis term_limit_diagnosis(const RaabeValue& p)
{
    if (!is_defined(p)) {
        return TermDiagnosis::Unknown;
    }
    if (const auto* e = std::get_if<ExactValue>(&p)) {
        const int s = sgn(e->p);
        return s > 0 ? TermDiagnosis::TermsVanish : s < 0 ? TermDiagnosis::TermsUnbounded : TermDiagnosis::Unknown;
    }
    const auto [lo, hi] = interval(p);
    if (lo > 0.0) {
        return TermDiagnosis::TermsVanish;
    }
    if (hi < 0.0) {
        return TermDiagnosis::TermsUnbounded;
    }
    return TermDiagnosis::Unknown;
}

}  // namespace raabe
