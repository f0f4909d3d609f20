#pragma once

// General-term expressions a_n: AST, parser, printer, evaluation and sign
// analysis.

#include "raabe/numbers.hpp"
#include "raabe/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace raabe {

/// slope*n + offset with integer coefficients.
struct Affine {
    Integer slope;
    Integer offset;

    Integer at(std::int64_t n) const { return slope * Integer(static_cast<long>(n)) + offset; }
    bool is_constant() const { return slope == 0; }
    friend bool operator==(const Affine& a, const Affine& b) { return a.slope == b.slope && a.offset == b.offset; }
};

/// A rational constant, or an affine-in-n exponent (only over a positive
/// rational base).
using Exponent = std::variant<Rational, Affine>;

struct Node;

/// Immutable, cheaply copyable handle to an expression tree.
class Expr {
public:
    explicit Expr(std::shared_ptr<const Node> node);

    const Node& node() const noexcept { return *node_; }
    const void* identity() const noexcept { return node_.get(); }

    template <class T>
    const T* as() const;

private:
    std::shared_ptr<const Node> node_;
};

enum class BinaryOp { Add, Sub, Mul, Div };

struct ConstNode {
    Rational value;
};
struct VarNode {};
/// (-1)^(n-1)
struct AltSignNode {};
struct NegNode {
    Expr arg;
};
struct BinaryNode {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};
struct PowNode {
    Expr base;
    Exponent exponent;
};
struct FactorialNode {
    Affine arg;
};
struct LogNode {
    Expr arg;
};
struct AbsNode {
    Expr arg;
};

struct Node {
    std::variant<ConstNode, VarNode, AltSignNode, NegNode, BinaryNode, PowNode, FactorialNode, LogNode, AbsNode> value;
};

template <class T>
const T* Expr::as() const
{
    return std::get_if<T>(&node_->value);
}

namespace ex {

Expr constant(const Rational& value);
Expr var();
Expr alt();
Expr neg(Expr arg);
Expr add(Expr lhs, Expr rhs);
Expr sub(Expr lhs, Expr rhs);
Expr mul(Expr lhs, Expr rhs);
Expr div(Expr lhs, Expr rhs);
Expr pow(Expr base, Exponent exponent);
Expr factorial(Affine arg);
Expr log(Expr arg);
Expr abs(Expr arg);

}  // namespace ex

/// Structural equality.
bool same_tree(const Expr& a, const Expr& b);
bool contains_log(const Expr& e);

/// Canonical text; reparses to the same tree.
std::string to_string(const Expr& e);
/// Constructor-style dump, e.g. "Div(Const 1, Pow(Var, 2))".
std::string debug_string(const Expr& e);

/// The expression as a polynomial in n with rational coefficients, when it is one.
std::optional<Polynomial> as_polynomial(const Expr& e);
/// (numerator, denominator) when the expression is a rational function of n.
std::optional<std::pair<Polynomial, Polynomial>> as_rational_function(const Expr& e);

/// A parsed general term together with the first index from which every
/// subterm is defined and nonzero.
struct Term {
    Expr expr;
    std::int64_t start_index = 1;
    /// True when the nonzero/defined property beyond the scanned range was
    /// proved structurally rather than only observed.
    bool start_certified = true;
};

/// Parses the expression grammar and computes the start index.
Term parse(std::string_view text);

/// Builds a Term for an already-constructed tree (computes the start index).
Term make_term(Expr expr);
/// A subterm of `parent` sharing its start index.
Term subterm(const Term& parent, Expr expr);

// ---------------------------------------------------------------------------
// Evaluation

struct EvalMode {
    enum class Kind { Exact, Float };
    Kind kind = Kind::Exact;
    int precision_bits = 0;

    static EvalMode exact() { return {Kind::Exact, 0}; }
    static EvalMode floating(int bits) { return {Kind::Float, bits}; }
};

using Value = std::variant<Rational, BigFloat>;

/// Exact value at n; throws ExactUnavailable for logarithms or irrational
/// powers, EvaluatesToZero when a_n = 0, DomainError when undefined.
Rational eval_exact(const Expr& e, std::int64_t n);
/// Value at n with relative error below 2^(1 - bits).
BigFloat eval_float(const Expr& e, std::int64_t n, int bits);

Value eval(const Term& term, std::int64_t n, EvalMode mode);

double to_double(const Value& v);

// ---------------------------------------------------------------------------
// Sign analysis

struct SignPattern {
    enum class Kind { ConstantPositive, ConstantNegative, Alternating, Unknown };
    Kind kind = Kind::Unknown;
    /// For Alternating: +1 when a_n = (-1)^(n-1) |a_n|, -1 for the negation.
    int first_sign = 1;

    static SignPattern positive() { return {Kind::ConstantPositive, 1}; }
    static SignPattern negative() { return {Kind::ConstantNegative, -1}; }
    static SignPattern alternating(int first) { return {Kind::Alternating, first}; }
    static SignPattern unknown() { return {Kind::Unknown, 1}; }

    bool is_alternating() const { return kind == Kind::Alternating; }
    friend bool operator==(const SignPattern&, const SignPattern&) = default;
};

std::string to_string(const SignPattern& s);
SignPattern sign_pattern_from_string(const std::string& s);

struct SignSplit {
    SignPattern pattern;
    /// |a_n| as an expression.
    Expr magnitude;
};

SignSplit sign_split(const Term& term);

}  // namespace raabe
