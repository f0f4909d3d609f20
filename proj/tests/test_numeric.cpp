#include "raabe/errors.hpp"
#include "raabe/numeric.hpp"

#include <doctest.h>

#include <cmath>

using namespace raabe;

namespace {

std::vector<Sample> synthetic(double p, double c1, double c2, int levels_from = 10, int levels_to = 20)
{
    std::vector<Sample> out;
    for (int k = levels_from; k <= levels_to; ++k) {
        const double n = std::ldexp(1.0, k);
        out.push_back({static_cast<std::int64_t>(n), BigFloat(p + c1 / n + c2 / (n * n), 128)});
    }
    return out;
}

double estimate_of(const RaabeValue& v)
{
    REQUIRE(std::holds_alternative<NumericValue>(v));
    return std::get<NumericValue>(v).estimate;
}

}  // namespace

TEST_CASE("default grid is 2^10 .. 2^20")
{
    const EstimatorConfig c;
    const auto g = c.grid();
    REQUIRE(g.size() == 11);
    CHECK(g.front() == 1024);
    CHECK(g.back() == 1048576);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config validation")
{
    EstimatorConfig c;
    c.precision_bits = 32;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.min_exponent = 19;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.max_exponent = 41;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.richardson_levels = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = {};
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("Richardson removes 1/n and 1/n^2 terms")
{
    const RaabeValue v = extrapolate(synthetic(0.75, 3.0, -5.0), 4);
    CHECK(estimate_of(v) == doctest::Approx(0.75).epsilon(1e-10));
    const auto [lo, hi] = interval(v);
    CHECK(lo <= 0.75);
    CHECK(hi >= 0.75);
    CHECK(std::get<NumericValue>(v).extrapolated);
}

TEST_CASE("too few samples")
{
    CHECK_THROWS_AS(extrapolate(synthetic(1.0, 1.0, 0.0, 10, 12), 4), InsufficientSamples);
    CHECK_NOTHROW(extrapolate(synthetic(1.0, 1.0, 0.0, 10, 14), 4));
}

TEST_CASE("oscillation detection")
{
    std::vector<Sample> alt;
    std::vector<Sample> smooth;
    for (int i = 0; i < 64; ++i) {
        const double n = 1000.0 + i;
        alt.push_back({1000 + i, BigFloat(0.5 + ((i % 2 == 0) ? 1.0 : -1.0), 128)});
        smooth.push_back({1000 + i, BigFloat(0.5 + 1.0 / n, 128)});
    }
    CHECK(detect_oscillation(alt, 1e-9));
    CHECK_FALSE(detect_oscillation(smooth, 1e-9));
}

TEST_CASE("estimates for closed forms")
{
    CHECK(estimate_of(estimate_raabe(parse("1/n^(3/2)"))) == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(estimate_of(estimate_raabe(parse("alt*(2n)!/(4^n*(n!)^2)"))) == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(estimate_of(estimate_raabe(parse("n^2"))) == doctest::Approx(-2.0).epsilon(1e-7));

    NumericDiagnostics diag;
    const RaabeValue v = estimate_raabe(parse("1/n^3"), {}, diag);
    const auto [lo, hi] = interval(v);
    const auto [slo, shi] = interval(diag.schlomilch);
    CHECK(lo <= 3.0);
    CHECK(hi >= 3.0);
    CHECK(slo <= 3.0);
    CHECK(shi >= 3.0);
}

TEST_CASE("oscillating ratios are undefined")
{
    const RaabeValue v = estimate_raabe(parse("1+alt/n"));
    const auto* u = std::get_if<UndefinedValue>(&v);
    REQUIRE(u);
    CHECK(u->reason == UndefinedReason::OscillatingRatio);
}

TEST_CASE("raw sequences")
{
    const Term t = parse("1/n^2");
    const auto r = ratio_sequence(t, {10, 100}, 128);
    REQUIRE(r.size() == 2);
    CHECK(r[0].value.to_double() == doctest::Approx(1.21));
    const auto s = raabe_sequence(t, {10}, 128);
    CHECK(s[0].value.to_double() == doctest::Approx(2.1));
    const auto l = schlomilch_sequence(t, {10}, 128);
    CHECK(l[0].value.to_double() == doctest::Approx(20.0 * std::log(1.1)));
    // Threads only change scheduling.
    const auto a = raabe_sequence(parse("(2n)!/((n!)^2*5^n)"), {50, 500, 5000}, 128, 1);
    const auto b = raabe_sequence(parse("(2n)!/((n!)^2*5^n)"), {50, 500, 5000}, 128, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value.to_double() == b[i].value.to_double());
    }
}

TEST_CASE("ratio limit estimates")
{
    const RatioLimit g = estimate_ratio_limit(parse("1/2^n+1/3^n"));
    CHECK(g.approx == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(g.error_bound < 1e-6);
    const RatioLimit one = estimate_ratio_limit(parse("1/log(n+1)"));
    CHECK(std::abs(one.approx - 1.0) <= one.error_bound + 1e-9);
}

TEST_CASE("numeric table")
{
    const auto rows = numeric_table(parse("1/n^2"));
    REQUIRE(rows.size() == 11);
    CHECK(rows.front().n == 1024);
    for (const auto& row : rows) {
        const double n = static_cast<double>(row.n);
        CHECK(row.raabe == doctest::Approx(2.0 + 1.0 / n));
        CHECK(row.schlomilch == doctest::Approx(2.0 * n * std::log1p(1.0 / n)));
    }
}
