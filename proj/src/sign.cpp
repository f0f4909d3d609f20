#include "raabe/errors.hpp"
#include "raabe/expr.hpp"

namespace raabe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Kind = SignPattern::Kind;

bool is_one(const Expr& e)
{
    const auto* c = e.as<ConstNode>();
    return c != nullptr && c->value == 1;
}

Expr times(const Expr& a, const Expr& b)
{
    if (is_one(a)) {
        return b;
    }
    if (is_one(b)) {
        return a;
    }
    return ex::mul(a, b);
}

Expr over(const Expr& a, const Expr& b)
{
    return is_one(b) ? a : ex::div(a, b);
}

SignPattern flip(SignPattern s)
{
    switch (s.kind) {
    case Kind::ConstantPositive: return SignPattern::negative();
    case Kind::ConstantNegative: return SignPattern::positive();
    case Kind::Alternating: return SignPattern::alternating(-s.first_sign);
    case Kind::Unknown: break;
    }
    return s;
}

SignPattern multiply(SignPattern a, SignPattern b)
{
    if (a.kind == Kind::Unknown || b.kind == Kind::Unknown) {
        return SignPattern::unknown();
    }
    if (a.kind == Kind::ConstantNegative) {
        return flip(multiply(SignPattern::positive(), b));
    }
    if (b.kind == Kind::ConstantNegative) {
        return flip(multiply(a, SignPattern::positive()));
    }
    if (a.kind == Kind::ConstantPositive) {
        return b;
    }
    if (b.kind == Kind::ConstantPositive) {
        return a;
    }
    // alt * alt
    return a.first_sign * b.first_sign > 0 ? SignPattern::positive() : SignPattern::negative();
}

struct Split {
    SignPattern pattern;
    Expr magnitude;
};

Split unknown(const Expr& e)
{
    return {SignPattern::unknown(), ex::abs(e)};
}

class Splitter {
public:
    explicit Splitter(std::int64_t start)
        : start_(start)
    {
    }

    Split operator()(const Expr& e) const
    {
        return std::visit([&](const auto& x) { return split(e, x); }, e.node().value);
    }

private:
    Split split(const Expr& e, const ConstNode& x) const
    {
        if (x.value > 0) {
            return {SignPattern::positive(), e};
        }
        if (x.value < 0) {
            return {SignPattern::negative(), ex::constant(Rational(-x.value))};
        }
        return unknown(e);
    }
    Split split(const Expr& e, const VarNode&) const { return {SignPattern::positive(), e}; }
    Split split(const Expr&, const AltSignNode&) const
    {
        return {SignPattern::alternating(1), ex::constant(Rational(1))};
    }
    Split split(const Expr&, const NegNode& x) const
    {
        Split s = (*this)(x.arg);
        return {flip(s.pattern), s.magnitude};
    }
    Split split(const Expr& e, const FactorialNode&) const { return {SignPattern::positive(), e}; }
    Split split(const Expr& e, const AbsNode& x) const
    {
        Split s = (*this)(x.arg);
        return {SignPattern::positive(), s.pattern.kind == Kind::Unknown ? e : s.magnitude};
    }
    Split split(const Expr& e, const LogNode& x) const
    {
        if (auto f = as_rational_function(x.arg)) {
            // log(N/D) > 0 iff N - D has the sign of D.
            if (positive_from((f->first - f->second) * f->second, start_)) {
                return {SignPattern::positive(), e};
            }
            if (positive_from((f->second - f->first) * f->second, start_)) {
                return {SignPattern::negative(), ex::neg(e)};
            }
        }
        return unknown(e);
    }
    Split split(const Expr& e, const PowNode& x) const
    {
        if (std::holds_alternative<Affine>(x.exponent)) {
            return {SignPattern::positive(), e};
        }
        const Rational& k = std::get<Rational>(x.exponent);
        const Split base = (*this)(x.base);
        if (base.pattern.kind == Kind::Unknown) {
            return unknown(e);
        }
        const Expr magnitude = is_one(base.magnitude) ? base.magnitude : ex::pow(base.magnitude, k);
        if (!is_integer(k)) {
            if (base.pattern.kind != Kind::ConstantPositive) {
                return unknown(e);
            }
            return {SignPattern::positive(), magnitude};
        }
        const bool odd = mpz_odd_p(k.get_num_mpz_t()) != 0;
        if (!odd) {
            return {SignPattern::positive(), magnitude};
        }
        return {base.pattern, magnitude};
    }
    Split split(const Expr& e, const BinaryNode& x) const
    {
        if (x.op == BinaryOp::Mul || x.op == BinaryOp::Div) {
            const Split l = (*this)(x.lhs);
            const Split r = (*this)(x.rhs);
            const SignPattern s = multiply(l.pattern, r.pattern);
            if (s.kind == Kind::Unknown) {
                return unknown(e);
            }
            const Expr m = x.op == BinaryOp::Mul ? times(l.magnitude, r.magnitude) : over(l.magnitude, r.magnitude);
            return {s, m};
        }
        if (auto f = as_rational_function(e)) {
            const Polynomial signed_part = f->first * f->second;
            if (positive_from(signed_part, start_)) {
                return {SignPattern::positive(), e};
            }
            if (positive_from(signed_part.negated(), start_)) {
                return {SignPattern::negative(), ex::neg(e)};
            }
            return unknown(e);
        }
        const Split l = (*this)(x.lhs);
        const Split r = (*this)(x.rhs);
        const Kind rk = x.op == BinaryOp::Sub ? flip(r.pattern).kind : r.pattern.kind;
        if (l.pattern.kind == Kind::ConstantPositive && rk == Kind::ConstantPositive) {
            return {SignPattern::positive(), e};
        }
        if (l.pattern.kind == Kind::ConstantNegative && rk == Kind::ConstantNegative) {
            return {SignPattern::negative(), ex::neg(e)};
        }
        return unknown(e);
    }

    std::int64_t start_;
};

}  // namespace

std::string to_string(const SignPattern& s)
{
    switch (s.kind) {
    case Kind::ConstantPositive: return "ConstantPositive";
    case Kind::ConstantNegative: return "ConstantNegative";
    case Kind::Alternating: return s.first_sign > 0 ? "Alternating(+)" : "Alternating(-)";
    case Kind::Unknown: break;
    }
    return "Unknown";
}

SignPattern sign_pattern_from_string(const std::string& s)
{
    if (s == "ConstantPositive") {
        return SignPattern::positive();
    }
    if (s == "ConstantNegative") {
        return SignPattern::negative();
    }
    if (s == "Alternating(+)") {
        return SignPattern::alternating(1);
    }
    if (s == "Alternating(-)") {
        return SignPattern::alternating(-1);
    }
    if (s == "Unknown") {
        return SignPattern::unknown();
    }
    throw Error("unknown sign pattern: " + s);
}

SignSplit sign_split(const Term& term)
{
    Split s = Splitter(term.start_index)(term.expr);
    return {s.pattern, s.magnitude};
}

}  // namespace raabe
