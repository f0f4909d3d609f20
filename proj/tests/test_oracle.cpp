#include "raabe/errors.hpp"
#include "raabe/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace raabe;

TEST_CASE("exact partial sums")
{
    const auto sums = partial_sums(parse("1/(n*(n+1))"), 10, EvalMode::exact());
    REQUIRE(sums.size() == 10);
    for (const auto& s : sums) {
        // Telescoping: S_m = 1 - 1/(m+1).
        CHECK(std::get<Rational>(s.sum) == Rational(1) - make_rational(1, s.m + 1));
    }
    const auto alt = partial_sums(parse("alt*(2n)!/(4^n*(n!)^2)"), 3, EvalMode::exact());
    CHECK(std::get<Rational>(alt.back().sum) == Rational(1, 2) - Rational(3, 8) + Rational(5, 16));
}

TEST_CASE("partial sums start at the first defined index")
{
    const auto sums = partial_sums(parse("1/(n-3)"), 6, EvalMode::exact());
    REQUIRE(sums.size() == 3);
    CHECK(sums.front().m == 4);
    CHECK(std::get<Rational>(sums.back().sum) == Rational(1) + Rational(1, 2) + Rational(1, 3));
}

TEST_CASE("floating partial sums track exact ones")
{
    const Term t = parse("alt*(2n)!/(4^n*(n!)^2)");
    const auto exact = partial_sums(t, 200, EvalMode::exact());
    const auto flt = partial_sums(t, 200, EvalMode::floating(128));
    REQUIRE(exact.size() == flt.size());
    for (std::size_t i = 0; i < exact.size(); i += 37) {
        CHECK(to_double(flt[i].sum) == doctest::Approx(to_double(exact[i].sum)).epsilon(1e-14));
    }
}

TEST_CASE("alternating brackets")
{
    const Term t = parse("alt/n");
    const Bracket b = alternating_bracket(t, 1000);
    CHECK(b.contains(std::log(2.0)));
    CHECK(b.width == doctest::Approx(1.0 / 1001.0));
    CHECK(b.upper - b.lower >= b.width);
    CHECK(alternating_bracket(t, 100).contains(b));
    CHECK_THROWS_AS(alternating_bracket(parse("1/n^2"), 100), NotAlternating);
    CHECK_THROWS_AS(alternating_bracket(parse("alt*n"), 100), NotDecreasing);
}

TEST_CASE("growth slopes")
{
    const SlopeFit half = abs_growth_slope(parse("1/n^(1/2)"), 1000, 100000);
    CHECK(half.slope == doctest::Approx(0.5).epsilon(0.05));
    CHECK(half.decade_ratio == doctest::Approx(std::sqrt(10.0)).epsilon(0.05));
    CHECK_FALSE(half.log_growth);

    const SlopeFit harmonic = abs_growth_slope(parse("1/n"), 1000, 100000);
    CHECK(harmonic.log_growth);
    CHECK(harmonic.decade_ratio == doctest::Approx(1.0).epsilon(0.02));

    const SlopeFit square = abs_growth_slope(parse("1/n^2"), 1000, 100000);
    CHECK(square.decade_ratio < 0.2);

    CHECK(term_magnitude_slope(parse("1/n^(3/2)"), 1000, 100000) == doctest::Approx(-1.5).epsilon(1e-3));
    CHECK(term_magnitude_slope(parse("n^2+1"), 1000, 100000) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS_AS(abs_growth_slope(parse("1/n"), 1000, 5000), Error);
}

TEST_CASE("empirical verdicts")
{
    OracleConfig cfg;
    cfg.slope_hi = 100000;
    const auto verdict = [&](const char* text) { return empirical_classify(parse(text), cfg).empirical.verdict; };
    CHECK(verdict("1/n^2") == Verdict::AbsolutelyConvergent);
    CHECK(verdict("alt/n^(1/2)") == Verdict::ConditionallyConvergent);
    CHECK(verdict("1/n^(1/2)") == Verdict::Divergent);
    CHECK(verdict("alt*n/(n+1)") == Verdict::Divergent);

    const OracleReport r = empirical_classify(parse("alt/n"), cfg);
    CHECK(r.empirical.confidence == Confidence::Empirical);
    REQUIRE(r.bracket);
    CHECK(r.bracket->contains(std::log(2.0)));
    REQUIRE_FALSE(r.partial_sum_samples.empty());
    CHECK(r.partial_sum_samples.front().first == 1);
    CHECK(r.partial_sum_samples.back().first == 100000);
    CHECK(r.partial_sum_samples.back().second == doctest::Approx(std::log(2.0)).epsilon(1e-4));
}
