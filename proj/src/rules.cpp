#include "raabe/rules.hpp"

#include "raabe/errors.hpp"

#include <algorithm>
#include <cmath>

namespace raabe {

namespace {

bool is_increasing_affine(const Expr& e)
{
    auto p = as_polynomial(e);
    return p && p->degree() == 1 && p->leading() > 0;
}

TraceNode leaf(Rule rule, const Expr& e, RaabeValue value, std::string note = {})
{
    TraceNode t;
    t.rule = rule;
    t.input = to_string(e);
    t.value = std::move(value);
    t.note = std::move(note);
    return t;
}

class Deriver {
public:
    Deriver(const Term& term, const DeriveOptions& options)
        : term_(term)
        , options_(options)
    {
    }

    TraceNode derive(const Expr& e) const
    {
        if (auto t = hypergeometric(e)) {
            return *t;
        }
        try {
            RaabeValue v = log_factor_value(e);
            const auto* pw = e.as<PowNode>();
            if (const auto* d = e.as<BinaryNode>()) {
                pw = d->rhs.as<PowNode>();
            }
            std::string note;
            if (pw != nullptr) {
                const Rational& k = std::get<Rational>(pw->exponent);
                if (abs(k) != 1) {
                    note = "generalized: exponent " + to_string(k) + " via the power rule";
                }
            }
            return leaf(Rule::LogFactor, e, std::move(v), note);
        } catch (const RuleNotApplicable&) {
        }
        return std::visit([&](const auto& x) { return structural(e, x); }, e.node().value);
    }

private:
    std::optional<TraceNode> hypergeometric(const Expr& e) const
    {
        const RatioResult r = ratio_rational_fn(subterm(term_, e));
        const auto* fn = std::get_if<RationalFn>(&r);
        if (fn == nullptr) {
            return std::nullopt;
        }
        TraceNode t = leaf(Rule::Hypergeometric, e, raabe_from_ratio(*fn));
        t.ratio = *fn;
        return t;
    }

    TraceNode fallback(const Expr& e, const std::string& why) const
    {
        if (!options_.numeric_fallback) {
            return leaf(Rule::NumericFallback, e,
                        undefined_value(UndefinedReason::NotApplicable, "no symbolic rule applies: " + why), why);
        }
        try {
            return leaf(Rule::NumericFallback, e, estimate_raabe(subterm(term_, e), options_.config), why);
        } catch (const Error& err) {
            return leaf(Rule::NumericFallback, e, undefined_value(UndefinedReason::NotApplicable, err.what()), why);
        }
    }

    template <class T>
    TraceNode structural(const Expr& e, const T&) const
    {
        return fallback(e, "no structural rule for " + to_string(e));
    }

    TraceNode structural(const Expr&, const NegNode& x) const { return derive(x.arg); }
    TraceNode structural(const Expr&, const AbsNode& x) const { return derive(x.arg); }

    TraceNode structural(const Expr& e, const PowNode& x) const
    {
        const Rational& k = std::get<Rational>(x.exponent);
        if (is_increasing_affine(x.base)) {
            TraceNode t = leaf(Rule::PSeries, e, exact_value(-k));
            t.exponent = k;
            return t;
        }
        TraceNode base = derive(x.base);
        if (!is_defined(base.value)) {
            return fallback(e, "base value undefined");
        }
        TraceNode t = leaf(Rule::Power, e, combine_power(base.value, k));
        t.exponent = k;
        t.children.push_back(std::move(base));
        return t;
    }

    TraceNode structural(const Expr& e, const BinaryNode& x) const
    {
        TraceNode l = derive(x.lhs);
        TraceNode r = derive(x.rhs);
        if (!is_defined(l.value) || !is_defined(r.value)) {
            return fallback(e, "a component value is undefined");
        }
        if (x.op == BinaryOp::Mul || x.op == BinaryOp::Div) {
            const int w = x.op == BinaryOp::Mul ? 1 : -1;
            TraceNode t = leaf(Rule::Product, e, combine_product(l.value, w > 0 ? r.value : negate(r.value)));
            t.weights = {1, w};
            t.children.push_back(std::move(l));
            t.children.push_back(std::move(r));
            return t;
        }
        const SumForm form = x.op == BinaryOp::Add ? SumForm::Sum : SumForm::Difference;
        try {
            const SignPattern ls = sign_split(subterm(term_, x.lhs)).pattern;
            const SignPattern rs = sign_split(subterm(term_, x.rhs)).pattern;
            TraceNode t = leaf(Rule::Sum, e, combine_sum(l.value, r.value, form, ls, rs));
            t.sum_form = form;
            t.children.push_back(std::move(l));
            t.children.push_back(std::move(r));
            return t;
        } catch (const RuleNotApplicable& err) {
            return fallback(e, std::string("sum rule refused: ") + err.what());
        }
    }

    const Term& term_;
    const DeriveOptions& options_;
};

}  // namespace

std::string to_string(Rule r)
{
    switch (r) {
    case Rule::PSeries: return "PSeries";
    case Rule::Hypergeometric: return "Hypergeometric";
    case Rule::Product: return "Product";
    case Rule::Power: return "Power";
    case Rule::Sum: return "Sum";
    case Rule::LogFactor: return "LogFactor";
    case Rule::NumericFallback: break;
    }
    return "NumericFallback";
}

Rule rule_from_string(const std::string& s)
{
    for (Rule r : {Rule::PSeries, Rule::Hypergeometric, Rule::Product, Rule::Power, Rule::Sum, Rule::LogFactor,
                   Rule::NumericFallback}) {
        if (to_string(r) == s) {
            return r;
        }
    }
    throw Error("unknown rule: " + s);
}

Derivation derive_value(const Term& term, const DeriveOptions& options)
{
    TraceNode trace = Deriver(term, options).derive(term.expr);
    RaabeValue value = trace.value;
    return {std::move(value), std::move(trace)};
}

RaabeValue negate(const RaabeValue& p)
{
    if (const auto* e = std::get_if<ExactValue>(&p)) {
        return exact_value(-e->p);
    }
    if (const auto* n = std::get_if<NumericValue>(&p)) {
        return numeric_value(-n->estimate, n->error_bound, n->extrapolated);
    }
    return p;
}

RaabeValue combine_product(const RaabeValue& p, const RaabeValue& q)
{
    if (!is_defined(p) || !is_defined(q)) {
        return undefined_value(UndefinedReason::NotApplicable, "product rule needs both values");
    }
    const auto* ep = std::get_if<ExactValue>(&p);
    const auto* eq = std::get_if<ExactValue>(&q);
    if (ep && eq) {
        return exact_value(ep->p + eq->p);
    }
    const auto part = [](const RaabeValue& v) -> NumericValue {
        if (const auto* e = std::get_if<ExactValue>(&v)) {
            return {to_double(e->p), 0.0, true};
        }
        return std::get<NumericValue>(v);
    };
    const NumericValue a = part(p);
    const NumericValue b = part(q);
    return numeric_value(a.estimate + b.estimate, a.error_bound + b.error_bound, a.extrapolated && b.extrapolated);
}

RaabeValue combine_power(const RaabeValue& p, const Rational& k)
{
    if (const auto* e = std::get_if<ExactValue>(&p)) {
        return exact_value(k * e->p);
    }
    if (const auto* n = std::get_if<NumericValue>(&p)) {
        const double kd = to_double(k);
        const double bound = std::abs(kd) * n->error_bound;
        // k = 0 would collapse the bound; keep it positive.
        return numeric_value(kd * n->estimate, bound > 0.0 ? bound : n->error_bound, n->extrapolated);
    }
    return undefined_value(UndefinedReason::NotApplicable, "power rule needs a defined value");
}

RaabeValue combine_sum(const RaabeValue& p, const RaabeValue& q, SumForm, const SignPattern& lhs_sign,
                       const SignPattern& rhs_sign)
{
    if (lhs_sign.kind != SignPattern::Kind::ConstantPositive || rhs_sign.kind != SignPattern::Kind::ConstantPositive) {
        throw RuleNotApplicable("summands are not both certified positive");
    }
    if (!is_defined(p) || !is_defined(q)) {
        throw RuleNotApplicable("a summand value is undefined");
    }
    const auto* ep = std::get_if<ExactValue>(&p);
    const auto* eq = std::get_if<ExactValue>(&q);
    if (ep && eq) {
        if (ep->p == eq->p) {
            throw RuleNotApplicable("summand values are equal (p = q)");
        }
        return ep->p < eq->p ? p : q;
    }
    const auto [pl, pu] = interval(p);
    const auto [ql, qu] = interval(q);
    if (pu < ql) {
        return p;
    }
    if (qu < pl) {
        return q;
    }
    throw RuleNotApplicable("summand value intervals overlap");
}

RaabeValue log_factor_value(const Expr& factor)
{
    const Expr* e = &factor;
    if (const auto* d = e->as<BinaryNode>()) {
        const auto* c = d->lhs.as<ConstNode>();
        if (d->op != BinaryOp::Div || c == nullptr || c->value == 0) {
            throw RuleNotApplicable("not a log factor");
        }
        e = &d->rhs;
    }
    if (const auto* pw = e->as<PowNode>()) {
        if (!std::holds_alternative<Rational>(pw->exponent)) {
            throw RuleNotApplicable("not a log factor");
        }
        e = &pw->base;
    }
    const auto* lg = e->as<LogNode>();
    if (lg == nullptr) {
        throw RuleNotApplicable("not a log factor");
    }
    if (!is_increasing_affine(lg->arg)) {
        throw RuleNotApplicable("logarithm argument is not affine a*n + b with a > 0");
    }
    return exact_value(Rational(0));
}

RaabeValue replay(const TraceNode& node)
{
    switch (node.rule) {
    case Rule::Hypergeometric:
        if (!node.ratio) {
            throw Error("hypergeometric trace node without a ratio");
        }
        return raabe_from_ratio(*node.ratio);
    case Rule::PSeries:
        if (!node.exponent) {
            throw Error("p-series trace node without an exponent");
        }
        return exact_value(-*node.exponent);
    case Rule::LogFactor: return exact_value(Rational(0));
    case Rule::Product: {
        RaabeValue acc = exact_value(Rational(0));
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const int w = i < node.weights.size() ? node.weights[i] : 1;
            acc = combine_product(acc, w > 0 ? node.children[i].value : negate(node.children[i].value));
        }
        return acc;
    }
    case Rule::Power:
        if (!node.exponent || node.children.size() != 1) {
            throw Error("malformed power trace node");
        }
        return combine_power(node.children[0].value, *node.exponent);
    case Rule::Sum:
        if (node.children.size() != 2) {
            throw Error("malformed sum trace node");
        }
        return combine_sum(node.children[0].value, node.children[1].value, node.sum_form.value_or(SumForm::Sum),
                           SignPattern::positive(), SignPattern::positive());
    case Rule::NumericFallback: break;
    }
    return node.value;
}

}  // namespace raabe
