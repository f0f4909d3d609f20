#include "raabe/hyperratio.hpp"

#include <algorithm>

namespace raabe {

namespace {

using Ratio = std::pair<Polynomial, Polynomial>;

constexpr std::int64_t kSignScanLimit = 1'000'000;

struct Walker {
    std::string reason;

    std::optional<Ratio> fail(std::string why)
    {
        if (reason.empty()) {
            reason = std::move(why);
        }
        return std::nullopt;
    }

    std::optional<Ratio> operator()(const Expr& e)
    {
        return std::visit([&](const auto& x) { return walk(e, x); }, e.node().value);
    }

    std::optional<Ratio> walk(const Expr&, const ConstNode&) { return Ratio{Rational(1), Rational(1)}; }
    std::optional<Ratio> walk(const Expr&, const VarNode&)
    {
        return Ratio{Polynomial::variable(), Polynomial::linear(Rational(1), Rational(1))};
    }
    std::optional<Ratio> walk(const Expr&, const AltSignNode&) { return Ratio{Rational(-1), Rational(1)}; }
    std::optional<Ratio> walk(const Expr&, const NegNode& x) { return (*this)(x.arg); }
    std::optional<Ratio> walk(const Expr&, const AbsNode& x) { return (*this)(x.arg); }
    std::optional<Ratio> walk(const Expr&, const LogNode&) { return fail("logarithm present"); }

    std::optional<Ratio> walk(const Expr&, const FactorialNode& x)
    {
        // (a n + b)! / (a n + a + b)! = 1 / prod_{j=1..a} (a n + b + j)
        if (!x.arg.slope.fits_uint_p() || x.arg.slope > 64) {
            return fail("factorial slope too large");
        }
        Polynomial den(Rational(1));
        const Rational a(x.arg.slope);
        for (unsigned long j = 1; j <= x.arg.slope.get_ui(); ++j) {
            den = den * Polynomial::linear(a, Rational(x.arg.offset + j));
        }
        return Ratio{Rational(1), den};
    }

    std::optional<Ratio> walk(const Expr& e, const PowNode& x)
    {
        if (const auto* aff = std::get_if<Affine>(&x.exponent)) {
            // c^(a n + b) / c^(a n + a + b) = c^(-a)
            const auto& c = std::get<ConstNode>(x.base.node().value).value;
            if (!aff->slope.fits_slong_p()) {
                return fail("exponent slope too large");
            }
            return Ratio{pow_int(c, -aff->slope.get_si()), Rational(1)};
        }
        const Rational& k = std::get<Rational>(x.exponent);
        if (!is_integer(k)) {
            return fail("non-integer power " + to_string(e));
        }
        if (!k.get_num().fits_sint_p() || abs(k.get_num()) > 256) {
            return fail("integer exponent too large");
        }
        auto base = (*this)(x.base);
        if (!base) {
            return std::nullopt;
        }
        const long m = k.get_num().get_si();
        const auto u = static_cast<unsigned>(m < 0 ? -m : m);
        if (m < 0) {
            return Ratio{base->second.pow(u), base->first.pow(u)};
        }
        return Ratio{base->first.pow(u), base->second.pow(u)};
    }

    std::optional<Ratio> walk(const Expr& e, const BinaryNode& x)
    {
        if (x.op == BinaryOp::Add || x.op == BinaryOp::Sub) {
            auto f = as_rational_function(e);
            if (!f) {
                return fail("sum of non-rational terms " + to_string(e));
            }
            // h(n)/h(n+1) for h = N/D
            return Ratio{f->first * f->second.shifted(Rational(1)), f->second * f->first.shifted(Rational(1))};
        }
        auto l = (*this)(x.lhs);
        if (!l) {
            return std::nullopt;
        }
        auto r = (*this)(x.rhs);
        if (!r) {
            return std::nullopt;
        }
        if (x.op == BinaryOp::Mul) {
            return Ratio{l->first * r->first, l->second * r->second};
        }
        return Ratio{l->first * r->second, l->second * r->first};
    }
};

}  // namespace

std::string RationalFn::to_string() const
{
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

std::optional<std::pair<Polynomial, Polynomial>> signed_ratio(const Expr& e)
{
    Walker w;
    return w(e);
}

RatioResult ratio_rational_fn(const Term& term)
{
    Walker w;
    auto r = w(term.expr);
    if (!r) {
        return NotHypergeometric{w.reason};
    }
    Polynomial num = r->first;
    Polynomial den = r->second;
    const Polynomial g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
        num = Polynomial::divmod(num, g).first;
        den = Polynomial::divmod(den, g).first;
    }
    auto [num_scale, num_prim] = num.primitive_part();
    auto [den_scale, den_prim] = den.primitive_part();
    const Rational scale = num_scale / den_scale;
    num = num_prim * Polynomial(Rational(scale.get_num()));
    den = den_prim * Polynomial(Rational(scale.get_den()));

    // |P/Q| agrees with sign(lc P * lc Q) * P/Q once both signs settle.
    const auto num_from = sign_stable_from(num, term.start_index, kSignScanLimit);
    const auto den_from = sign_stable_from(den, term.start_index, kSignScanLimit);
    if (!num_from || !den_from) {
        return NotHypergeometric{"ratio sign not certified below n = 10^6"};
    }
    if (sgn(num.leading()) < 0) {
        num = num.negated();
    }
    if (sgn(den.leading()) < 0) {
        den = den.negated();
    }
    return RationalFn{num, den, std::max(*num_from, *den_from)};
}

RatioLimit ratio_limit(const RationalFn& r)
{
    if (r.num.degree() > r.den.degree()) {
        return RatioLimit::infinity();
    }
    if (r.num.degree() < r.den.degree()) {
        return RatioLimit::of(Rational(0));
    }
    return RatioLimit::of(r.num.leading() / r.den.leading());
}

RaabeValue raabe_from_ratio(const RationalFn& r)
{
    const int d = r.num.degree();
    if (d == r.den.degree() && r.num.leading() == r.den.leading()) {
        return exact_value((r.num.coeff(d - 1) - r.den.coeff(d - 1)) / r.num.leading());
    }
    const RatioLimit limit = ratio_limit(r);
    return undefined_value(UndefinedReason::RatioLimitNotOne, "lim |a_n/a_(n+1)| = " + limit.to_string(), limit);
}

}  // namespace raabe
