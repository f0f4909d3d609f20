#pragma once

// Compositional Raabe values: product, power, sum/difference and log-factor
// rules with a derivation trace.

#include "raabe/expr.hpp"
#include "raabe/hyperratio.hpp"
#include "raabe/numeric.hpp"
#include "raabe/raabe_value.hpp"

#include <optional>
#include <string>
#include <vector>

namespace raabe {

enum class Rule { PSeries, Hypergeometric, Product, Power, Sum, LogFactor, NumericFallback };

std::string to_string(Rule r);
Rule rule_from_string(const std::string& s);

enum class SumForm { Sum, Difference };

struct TraceNode {
    Rule rule = Rule::NumericFallback;
    std::string input;
    RaabeValue value;
    std::vector<TraceNode> children;
    /// Product: +1 for a factor, -1 for a divisor, one per child.
    std::vector<int> weights;
    /// Power and PSeries: the exponent k.
    std::optional<Rational> exponent;
    /// Hypergeometric: the reduced ratio.
    std::optional<RationalFn> ratio;
    /// Sum: which form.
    std::optional<SumForm> sum_form;
    std::string note;
};

struct Derivation {
    RaabeValue value;
    TraceNode trace;
};

struct DeriveOptions {
    /// When false, no numeric fallback: unresolved nodes become Undefined(NotApplicable).
    bool numeric_fallback = true;
    EstimatorConfig config;
};

/// Never throws for well-formed terms; returns Undefined when nothing applies.
Derivation derive_value(const Term& term, const DeriveOptions& options = {});

RaabeValue negate(const RaabeValue& p);
RaabeValue combine_product(const RaabeValue& p, const RaabeValue& q);
RaabeValue combine_power(const RaabeValue& p, const Rational& k);
/// min(p, q) for positive summands; throws RuleNotApplicable when p = q, when
/// either summand is not certified positive, or when Numeric intervals overlap.
RaabeValue combine_sum(const RaabeValue& p, const RaabeValue& q, SumForm form, const SignPattern& lhs_sign,
                       const SignPattern& rhs_sign);
/// Exact(0) for (log(a n + b))^k with a > 0; RuleNotApplicable otherwise.
RaabeValue log_factor_value(const Expr& factor);

/// Recomputes a node's value from its children (or its own data for leaves).
RaabeValue replay(const TraceNode& node);

}  // namespace raabe
