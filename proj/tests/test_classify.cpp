#include "raabe/classify.hpp"
#include "raabe/errors.hpp"

#include <doctest.h>

using namespace raabe;

namespace {

const SignPattern kPos = SignPattern::positive();
const SignPattern kAlt = SignPattern::alternating(1);

Verdict verdict_of(const RaabeValue& p, const SignPattern& s) { return classify(p, s).verdict; }

}  // namespace

TEST_CASE("exact values")
{
    CHECK(verdict_of(exact_value(Rational(3, 2)), kPos) == Verdict::AbsolutelyConvergent);
    CHECK(verdict_of(exact_value(Rational(3, 2)), kAlt) == Verdict::AbsolutelyConvergent);
    CHECK(verdict_of(exact_value(Rational(1, 2)), kAlt) == Verdict::ConditionallyConvergent);
    CHECK(verdict_of(exact_value(Rational(1, 2)), kPos) == Verdict::ConditionallyConvergentOrDivergent);
    CHECK(verdict_of(exact_value(Rational(0)), kAlt) == Verdict::ConditionallyConvergentOrDivergent);
    CHECK(verdict_of(exact_value(Rational(-1, 2)), kAlt) == Verdict::Divergent);
    CHECK(verdict_of(exact_value(Rational(1)), kPos) == Verdict::Inconclusive);
    CHECK(verdict_of(exact_value(Rational(1)), kAlt) == Verdict::ConvergentTypeUnknown);

    const Classification c = classify(exact_value(Rational(1, 2)), kAlt);
    CHECK(c.theorem == Theorem::RaabesAlternatingSeriesTest);
    CHECK(c.p_kind == PKind::Exact);
    CHECK(c.confidence == Confidence::TheoremBacked);
    CHECK_FALSE(c.boundary);
    CHECK(classify(exact_value(Rational(2)), kPos).theorem == Theorem::RaabesTest);
}

TEST_CASE("numeric values near a boundary are inconclusive")
{
    for (double p : {0.0, 1.0}) {
        const Classification c = classify(numeric_value(p + 1e-8, 1e-6), kAlt);
        CHECK(c.verdict == Verdict::Inconclusive);
        CHECK(c.boundary);
        CHECK(c.p_kind == PKind::Numeric);
    }
    CHECK(verdict_of(numeric_value(1.5, 1e-6), kPos) == Verdict::AbsolutelyConvergent);
    CHECK(verdict_of(numeric_value(0.5, 1e-6), kAlt) == Verdict::ConditionallyConvergent);
    CHECK(verdict_of(numeric_value(0.5, 1e-6), kPos) == Verdict::ConditionallyConvergentOrDivergent);
    CHECK(verdict_of(numeric_value(-0.5, 1e-6), kPos) == Verdict::Divergent);
}

TEST_CASE("undefined values")
{
    const RaabeValue osc = undefined_value(UndefinedReason::OscillatingRatio, "ratio oscillates");
    const Classification c = classify(osc, SignPattern::unknown());
    CHECK(c.verdict == Verdict::Inconclusive);
    CHECK(c.theorem == Theorem::None);
    CHECK(c.reason.find("ratio oscillates") != std::string::npos);

    // |a_n / a_(n+1)| -> 2: terms shrink geometrically.
    const RaabeValue geo = undefined_value(UndefinedReason::RatioLimitNotOne, "", RatioLimit::of(2));
    CHECK(verdict_of(geo, kPos) == Verdict::AbsolutelyConvergent);
    CHECK(classify(geo, kPos).theorem == Theorem::RatioTest);
    const RaabeValue fac = undefined_value(UndefinedReason::RatioLimitNotOne, "", RatioLimit::of(0));
    CHECK(verdict_of(fac, kAlt) == Verdict::Divergent);
}

TEST_CASE("term limit diagnosis")
{
    CHECK(term_limit_diagnosis(exact_value(Rational(1, 2))) == TermDiagnosis::TermsVanish);
    CHECK(term_limit_diagnosis(exact_value(Rational(-1))) == TermDiagnosis::TermsUnbounded);
    CHECK(term_limit_diagnosis(exact_value(Rational(0))) == TermDiagnosis::Unknown);
    CHECK(term_limit_diagnosis(numeric_value(0.0, 0.1)) == TermDiagnosis::Unknown);
    CHECK(term_limit_diagnosis(numeric_value(-1.0, 0.1)) == TermDiagnosis::TermsUnbounded);
    CHECK(term_limit_diagnosis(undefined_value(UndefinedReason::NotApplicable, "")) == TermDiagnosis::Unknown);
}

TEST_CASE("compatibility between verdicts")
{
    CHECK(compatible(Verdict::ConditionallyConvergentOrDivergent, Verdict::Divergent));
    CHECK(compatible(Verdict::ConditionallyConvergentOrDivergent, Verdict::ConditionallyConvergent));
    CHECK_FALSE(compatible(Verdict::ConditionallyConvergentOrDivergent, Verdict::AbsolutelyConvergent));
    CHECK(compatible(Verdict::ConvergentTypeUnknown, Verdict::AbsolutelyConvergent));
    CHECK_FALSE(compatible(Verdict::ConvergentTypeUnknown, Verdict::Divergent));
    CHECK(compatible(Verdict::Inconclusive, Verdict::Divergent));
    CHECK_FALSE(compatible(Verdict::Divergent, Verdict::Inconclusive));
    CHECK(consistent(Verdict::Inconclusive, Verdict::AbsolutelyConvergent));
    CHECK_FALSE(consistent(Verdict::AbsolutelyConvergent, Verdict::Divergent));
    CHECK(consistent(Verdict::ConditionallyConvergentOrDivergent, Verdict::Divergent));
}

TEST_CASE("ratio test prefilter")
{
    const RatioPrecheck g = ratio_precheck(parse("1/2^n"));
    CHECK(g.outcome == RatioPrecheck::Outcome::DecidedByRatioTest);
    CHECK(g.verdict == Verdict::AbsolutelyConvergent);
    REQUIRE(g.limit);
    CHECK(g.limit->exact == Rational(1, 2));

    const RatioPrecheck f = ratio_precheck(parse("n!"));
    CHECK(f.verdict == Verdict::Divergent);
    CHECK(f.limit->infinite);

    const RatioPrecheck one = ratio_precheck(parse("alt*(2n)!/(4^n*(n!)^2)"));
    CHECK(one.outcome == RatioPrecheck::Outcome::Proceed);
    CHECK(one.limit->exact == Rational(1));

    const RatioPrecheck mixed = ratio_precheck(parse("1/2^n+1/3^n"));
    CHECK(mixed.outcome == RatioPrecheck::Outcome::DecidedByRatioTest);
    CHECK(mixed.verdict == Verdict::AbsolutelyConvergent);
    CHECK_FALSE(mixed.limit->exact);

    const RatioPrecheck slow = ratio_precheck(parse("1/log(n+1)"));
    CHECK(slow.outcome == RatioPrecheck::Outcome::Proceed);
}

TEST_CASE("names round-trip")
{
    for (Verdict v : {Verdict::AbsolutelyConvergent, Verdict::ConditionallyConvergent, Verdict::Divergent,
                      Verdict::ConditionallyConvergentOrDivergent, Verdict::ConvergentTypeUnknown,
                      Verdict::Inconclusive}) {
        CHECK(verdict_from_string(to_string(v)) == v);
    }
    for (Theorem t : {Theorem::RaabesTest, Theorem::RaabesAlternatingSeriesTest, Theorem::RatioTest, Theorem::None}) {
        CHECK(theorem_from_string(to_string(t)) == t);
    }
    for (PKind k : {PKind::Exact, PKind::Numeric, PKind::Undefined}) {
        CHECK(p_kind_from_string(to_string(k)) == k);
    }
    for (Confidence c : {Confidence::TheoremBacked, Confidence::Empirical}) {
        CHECK(confidence_from_string(to_string(c)) == c);
    }
    for (TermDiagnosis d : {TermDiagnosis::TermsVanish, TermDiagnosis::TermsUnbounded, TermDiagnosis::Unknown}) {
        CHECK(term_diagnosis_from_string(to_string(d)) == d);
    }
    CHECK_THROWS_AS(verdict_from_string("Convergent"), Error);
}
