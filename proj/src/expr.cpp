#include "raabe/expr.hpp"

#include "raabe/errors.hpp"

#include <sstream>

namespace raabe {

Expr::Expr(std::shared_ptr<const Node> node)
    : node_(std::move(node))
{
}

namespace ex {

namespace {

template <class T>
Expr make(T payload)
{
    return Expr(std::make_shared<const Node>(Node{std::move(payload)}));
}

}  // namespace

Expr constant(const Rational& value) { return make(ConstNode{value}); }
Expr var() { return make(VarNode{}); }
Expr alt() { return make(AltSignNode{}); }
Expr neg(Expr arg) { return make(NegNode{std::move(arg)}); }
Expr add(Expr lhs, Expr rhs) { return make(BinaryNode{BinaryOp::Add, std::move(lhs), std::move(rhs)}); }
Expr sub(Expr lhs, Expr rhs) { return make(BinaryNode{BinaryOp::Sub, std::move(lhs), std::move(rhs)}); }
Expr mul(Expr lhs, Expr rhs) { return make(BinaryNode{BinaryOp::Mul, std::move(lhs), std::move(rhs)}); }
Expr div(Expr lhs, Expr rhs) { return make(BinaryNode{BinaryOp::Div, std::move(lhs), std::move(rhs)}); }
Expr pow(Expr base, Exponent exponent) { return make(PowNode{std::move(base), std::move(exponent)}); }
Expr factorial(Affine arg) { return make(FactorialNode{std::move(arg)}); }
Expr log(Expr arg) { return make(LogNode{std::move(arg)}); }
Expr abs(Expr arg) { return make(AbsNode{std::move(arg)}); }

}  // namespace ex

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool same_exponent(const Exponent& a, const Exponent& b)
{
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto* qa = std::get_if<Rational>(&a)) {
        return *qa == std::get<Rational>(b);
    }
    return std::get<Affine>(a) == std::get<Affine>(b);
}

}  // namespace

bool same_tree(const Expr& a, const Expr& b)
{
    if (a.identity() == b.identity()) {
        return true;
    }
    const auto& va = a.node().value;
    const auto& vb = b.node().value;
    if (va.index() != vb.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const ConstNode& x) { return x.value == std::get<ConstNode>(vb).value; },
            [&](const VarNode&) { return true; },
            [&](const AltSignNode&) { return true; },
            [&](const NegNode& x) { return same_tree(x.arg, std::get<NegNode>(vb).arg); },
            [&](const BinaryNode& x) {
                const auto& y = std::get<BinaryNode>(vb);
                return x.op == y.op && same_tree(x.lhs, y.lhs) && same_tree(x.rhs, y.rhs);
            },
            [&](const PowNode& x) {
                const auto& y = std::get<PowNode>(vb);
                return same_exponent(x.exponent, y.exponent) && same_tree(x.base, y.base);
            },
            [&](const FactorialNode& x) { return x.arg == std::get<FactorialNode>(vb).arg; },
            [&](const LogNode& x) { return same_tree(x.arg, std::get<LogNode>(vb).arg); },
            [&](const AbsNode& x) { return same_tree(x.arg, std::get<AbsNode>(vb).arg); },
        },
        va);
}

bool contains_log(const Expr& e)
{
    return std::visit(
        overloaded{
            [](const ConstNode&) { return false; },
            [](const VarNode&) { return false; },
            [](const AltSignNode&) { return false; },
            [](const NegNode& x) { return contains_log(x.arg); },
            [](const BinaryNode& x) { return contains_log(x.lhs) || contains_log(x.rhs); },
            [](const PowNode& x) { return contains_log(x.base); },
            [](const FactorialNode&) { return false; },
            [](const LogNode&) { return true; },
            [](const AbsNode& x) { return contains_log(x.arg); },
        },
        e.node().value);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecPostfix = 5;
constexpr int kPrecAtom = 6;

std::string affine_text(const Affine& a)
{
    std::ostringstream out;
    if (a.slope == 0) {
        out << a.offset.get_str();
        return out.str();
    }
    if (a.slope == 1) {
        out << "n";
    } else {
        out << a.slope.get_str() << "*n";
    }
    if (a.offset > 0) {
        out << " + " << a.offset.get_str();
    } else if (a.offset < 0) {
        out << " - " << Integer(-a.offset).get_str();
    }
    return out.str();
}

struct Printed {
    std::string text;
    int prec;
};

Printed print(const Expr& e);

std::string wrap(const Printed& p, int min_prec)
{
    return p.prec < min_prec ? "(" + p.text + ")" : p.text;
}

Printed print_const(const Rational& q)
{
    if (is_integer(q)) {
        return {q.get_str(), q < 0 ? kPrecNeg : kPrecAtom};
    }
    return {q.get_str(), kPrecProduct};
}

Printed print(const Expr& e)
{
    return std::visit(
        overloaded{
            [](const ConstNode& x) { return print_const(x.value); },
            [](const VarNode&) { return Printed{"n", kPrecAtom}; },
            [](const AltSignNode&) { return Printed{"alt", kPrecAtom}; },
            [](const NegNode& x) { return Printed{"-" + wrap(print(x.arg), kPrecPow), kPrecNeg}; },
            [](const BinaryNode& x) {
                const int prec = (x.op == BinaryOp::Add || x.op == BinaryOp::Sub) ? kPrecSum : kPrecProduct;
                const char* sym = x.op == BinaryOp::Add ? " + " : x.op == BinaryOp::Sub ? " - " : x.op == BinaryOp::Mul ? "*" : "/";
                return Printed{wrap(print(x.lhs), prec) + sym + wrap(print(x.rhs), prec + 1), prec};
            },
            [](const PowNode& x) {
                std::string exp;
                if (const auto* q = std::get_if<Rational>(&x.exponent)) {
                    exp = is_integer(*q) ? q->get_str() : "(" + q->get_str() + ")";
                } else {
                    const auto& a = std::get<Affine>(x.exponent);
                    exp = (a.slope == 1 && a.offset == 0) ? "n" : "(" + affine_text(a) + ")";
                }
                return Printed{wrap(print(x.base), kPrecAtom) + "^" + exp, kPrecPow};
            },
            [](const FactorialNode& x) {
                const bool bare = (x.arg.slope == 1 && x.arg.offset == 0) || x.arg.slope == 0;
                const std::string inner = affine_text(x.arg);
                return Printed{(bare ? inner : "(" + inner + ")") + "!", kPrecPostfix};
            },
            [](const LogNode& x) { return Printed{"log(" + print(x.arg).text + ")", kPrecAtom}; },
            [](const AbsNode& x) { return Printed{"abs(" + print(x.arg).text + ")", kPrecAtom}; },
        },
        e.node().value);
}

std::string affine_debug(const Affine& a)
{
    std::ostringstream out;
    if (a.slope == 0) {
        out << a.offset.get_str();
        return out.str();
    }
    if (a.slope != 1) {
        out << a.slope.get_str();
    }
    out << "n";
    if (a.offset > 0) {
        out << "+" << a.offset.get_str();
    } else if (a.offset < 0) {
        out << a.offset.get_str();
    }
    return out.str();
}

}  // namespace

std::string to_string(const Expr& e)
{
    return print(e).text;
}

std::string debug_string(const Expr& e)
{
    return std::visit(
        overloaded{
            [](const ConstNode& x) { return "Const " + x.value.get_str(); },
            [](const VarNode&) { return std::string("Var"); },
            [](const AltSignNode&) { return std::string("AltSign"); },
            [](const NegNode& x) { return "Neg(" + debug_string(x.arg) + ")"; },
            [](const BinaryNode& x) {
                const char* name = x.op == BinaryOp::Add ? "Add" : x.op == BinaryOp::Sub ? "Sub" : x.op == BinaryOp::Mul ? "Mul" : "Div";
                return std::string(name) + "(" + debug_string(x.lhs) + ", " + debug_string(x.rhs) + ")";
            },
            [](const PowNode& x) {
                std::string exp;
                if (const auto* q = std::get_if<Rational>(&x.exponent)) {
                    exp = q->get_str();
                } else {
                    exp = affine_debug(std::get<Affine>(x.exponent));
                }
                return "Pow(" + debug_string(x.base) + ", " + exp + ")";
            },
            [](const FactorialNode& x) { return "Factorial(" + affine_debug(x.arg) + ")"; },
            [](const LogNode& x) { return "Log(" + debug_string(x.arg) + ")"; },
            [](const AbsNode& x) { return "Abs(" + debug_string(x.arg) + ")"; },
        },
        e.node().value);
}

// ---------------------------------------------------------------------------

std::optional<Polynomial> as_polynomial(const Expr& e)
{
    using Opt = std::optional<Polynomial>;
    return std::visit(
        overloaded{
            [](const ConstNode& x) -> Opt { return Polynomial(x.value); },
            [](const VarNode&) -> Opt { return Polynomial::variable(); },
            [](const AltSignNode&) -> Opt { return std::nullopt; },
            [](const NegNode& x) -> Opt {
                auto p = as_polynomial(x.arg);
                return p ? Opt(p->negated()) : std::nullopt;
            },
            [](const BinaryNode& x) -> Opt {
                auto l = as_polynomial(x.lhs);
                if (!l) {
                    return std::nullopt;
                }
                auto r = as_polynomial(x.rhs);
                if (!r) {
                    return std::nullopt;
                }
                switch (x.op) {
                case BinaryOp::Add: return *l + *r;
                case BinaryOp::Sub: return *l - *r;
                case BinaryOp::Mul: return *l * *r;
                case BinaryOp::Div:
                    if (r->degree() != 0) {
                        return std::nullopt;
                    }
                    return *l * Polynomial(Rational(1) / r->leading());
                }
                return std::nullopt;
            },
            [](const PowNode& x) -> Opt {
                const auto* k = std::get_if<Rational>(&x.exponent);
                if (k == nullptr || !is_integer(*k) || *k < 0 || !k->get_num().fits_uint_p()) {
                    return std::nullopt;
                }
                auto b = as_polynomial(x.base);
                if (!b) {
                    return std::nullopt;
                }
                return b->pow(static_cast<unsigned>(k->get_num().get_ui()));
            },
            [](const FactorialNode& x) -> Opt {
                if (x.arg.slope != 0 || !x.arg.offset.fits_ulong_p()) {
                    return std::nullopt;
                }
                Integer f;
                mpz_fac_ui(f.get_mpz_t(), x.arg.offset.get_ui());
                return Polynomial(Rational(f));
            },
            [](const LogNode&) -> Opt { return std::nullopt; },
            [](const AbsNode&) -> Opt { return std::nullopt; },
        },
        e.node().value);
}

}  // namespace raabe
