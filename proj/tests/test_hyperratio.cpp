#include "generators.hpp"

#include "raabe/errors.hpp"
#include "raabe/hyperratio.hpp"

#include <doctest.h>

#include <random>

using namespace raabe;

namespace {

RationalFn ratio_of(const std::string& text)
{
    const RatioResult r = ratio_rational_fn(parse(text));
    REQUIRE_MESSAGE(std::holds_alternative<RationalFn>(r), text);
    return std::get<RationalFn>(r);
}

Rational exact_p(const std::string& text)
{
    const RaabeValue v = raabe_from_ratio(ratio_of(text));
    REQUIRE_MESSAGE(is_exact(v), text);
    return std::get<ExactValue>(v).p;
}

}  // namespace

TEST_CASE("central binomial ratios")
{
    const RationalFn r = ratio_of("alt*(2n)!/(4^n*(n!)^2)");
    CHECK(r.to_string() == "(2*n + 2)/(2*n + 1)");
    CHECK(exact_p("alt*(2n)!/(4^n*(n!)^2)") == Rational(1, 2));
    CHECK(exact_p("alt*(2n-1)!/(4^n*(n!)^2)") == Rational(3, 2));
    CHECK(exact_p("alt*(2n+1)!/(4^n*(n!)^2)") == Rational(-1, 2));
}

TEST_CASE("polynomials and p-series")
{
    CHECK(exact_p("6*n^4-11*n^3-3*n^2+7*n+5") == -4);
    CHECK(exact_p("1/n^3") == 3);
    CHECK(exact_p("n^2") == -2);
    CHECK(exact_p("1/n") == 1);
    CHECK(exact_p("(n^2+1)/(n^5+n)") == 3);
    CHECK(exact_p("alt") == 0);
    CHECK(exact_p("7") == 0);
}

TEST_CASE("ratio limits other than one")
{
    const RaabeValue g = raabe_from_ratio(ratio_of("1/2^n"));
    const auto* u = std::get_if<UndefinedValue>(&g);
    REQUIRE(u);
    CHECK(u->reason == UndefinedReason::RatioLimitNotOne);
    REQUIRE(u->ratio_limit);
    CHECK(*u->ratio_limit->exact == 2);

    const RatioLimit f = ratio_limit(ratio_of("n!"));
    CHECK(f.exact == Rational(0));
    CHECK(ratio_limit(ratio_of("1/n!")).infinite);
    CHECK(ratio_limit(ratio_of("3^n/n")).exact == Rational(1, 3));
}

TEST_CASE("non-hypergeometric terms are reported")
{
    for (const char* text : {"1/log(n+1)", "sqrt(n)", "1+alt/n", "n^(1/2)*n!"}) {
        CHECK_MESSAGE(std::holds_alternative<NotHypergeometric>(ratio_rational_fn(parse(text))), text);
    }
}

TEST_CASE("normal form")
{
    const RationalFn r = ratio_of("(2n)!/(n!)^2");
    CHECK(Polynomial::gcd(r.num, r.den).is_constant());
    CHECK(r.den.leading() > 0);
    CHECK(r.num.has_integer_coeffs());
    CHECK(r.den.has_integer_coeffs());
    CHECK(r == ratio_of("(2n)!/(n!*n!)"));
}

TEST_CASE("valid_from excludes early sign changes")
{
    const RationalFn r = ratio_of("1/(n^2-30*n+200)");
    CHECK(r.valid_from >= 20);
    for (std::int64_t n = r.valid_from; n < r.valid_from + 50; ++n) {
        CHECK(r.num(Rational(n)) > 0);
        CHECK(r.den(Rational(n)) > 0);
    }
}

TEST_CASE("ratio matches exact term quotients on random terms")
{
    std::mt19937 rng(7);
    for (int i = 0; i < 60; ++i) {
        const std::string text = testing::random_hypergeometric(rng);
        const Term term = parse(text);
        const RationalFn r = ratio_of(text);
        const std::int64_t from = std::max(term.start_index, r.valid_from);
        for (std::int64_t n = from; n < from + 6; ++n) {
            const Rational direct = abs(Rational(eval_exact(term.expr, n) / eval_exact(term.expr, n + 1)));
            CHECK_MESSAGE(r(Rational(n)) == direct, text << " at n = " << n);
        }
    }
}

TEST_CASE("n (R(n) - 1) approaches the exact value")
{
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        const std::string text = testing::random_hypergeometric(rng);
        const RaabeValue v = raabe_from_ratio(ratio_of(text));
        REQUIRE(is_exact(v));
        const Rational p = std::get<ExactValue>(v).p;
        const RationalFn r = ratio_of(text);
        const Rational a(1000000);
        const Rational b(2000000);
        const Rational ra = a * (r(a) - 1) - p;
        const Rational rb = b * (r(b) - 1) - p;
        // First-order convergence: the error roughly halves when n doubles.
        CHECK_MESSAGE(abs(rb) <= abs(ra) * Rational(3, 5) + Rational(1, 1000000000), text);
        CHECK_MESSAGE(abs(ra) < Rational(1, 1000), text);
    }
}
