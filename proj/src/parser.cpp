// Recursive-descent parser for the general-term grammar:
//
//   expr    = term { ("+"|"-") term }
//   term    = factor { ("*"|"/") factor }
//   factor  = [ "-" ] power
//   power   = postfix [ "^" exponent ]
//   postfix = atom [ "!" ]
//   atom    = number | "n" | "alt" | log(expr) | sqrt(expr) | abs(expr) | "(" expr ")"
//   exponent= signed rational literal | "n" | "(" affine-in-n or rational ")"
//
// Constant subexpressions are folded. "2n" is accepted only where the
// enclosing group ends up as a factorial argument or an exponent.

#include "raabe/errors.hpp"
#include "raabe/expr.hpp"

#include <cctype>

namespace raabe {

namespace {

const std::vector<std::string> kAfterOperand = {"'+'", "'-'", "'*'", "'/'", "'^'", "'!'", "')'", "end of input"};
const std::vector<std::string> kOperandStart = {"number", "'n'", "'alt'", "'log('", "'sqrt('", "'abs('", "'('", "'-'"};

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

const Rational* const_value(const Expr& e)
{
    const auto* c = e.as<ConstNode>();
    return c ? &c->value : nullptr;
}

Expr fold_neg(Expr e)
{
    if (const auto* c = const_value(e)) {
        return ex::constant(-*c);
    }
    return ex::neg(std::move(e));
}

Expr fold_binary(BinaryOp op, Expr lhs, Expr rhs, std::size_t offset)
{
    const auto* a = const_value(lhs);
    const auto* b = const_value(rhs);
    if (a && b) {
        switch (op) {
        case BinaryOp::Add: return ex::constant(*a + *b);
        case BinaryOp::Sub: return ex::constant(*a - *b);
        case BinaryOp::Mul: return ex::constant(*a * *b);
        case BinaryOp::Div:
            if (*b == 0) {
                throw DomainError(offset, "division by zero");
            }
            return ex::constant(*a / *b);
        }
    }
    if (op == BinaryOp::Div && b && *b == 0) {
        throw DomainError(offset, "division by zero");
    }
    switch (op) {
    case BinaryOp::Add: return ex::add(std::move(lhs), std::move(rhs));
    case BinaryOp::Sub: return ex::sub(std::move(lhs), std::move(rhs));
    case BinaryOp::Mul: return ex::mul(std::move(lhs), std::move(rhs));
    case BinaryOp::Div: return ex::div(std::move(lhs), std::move(rhs));
    }
    return lhs;
}

/// (-1)^(a*n + b) as AltSign / Neg(AltSign) / +-1.
Expr minus_one_power(const Affine& a)
{
    const bool slope_odd = mpz_odd_p(a.slope.get_mpz_t()) != 0;
    const bool offset_odd = mpz_odd_p(a.offset.get_mpz_t()) != 0;
    if (slope_odd) {
        // (-1)^(a n + b) = (-1)^(n-1) * (-1)^(b+1) for odd a.
        return offset_odd ? ex::alt() : ex::neg(ex::alt());
    }
    return ex::constant(Rational(offset_odd ? -1 : 1));
}

Expr make_power(Expr base, Exponent exponent, std::size_t offset)
{
    if (auto* a = std::get_if<Affine>(&exponent); a && a->is_constant()) {
        exponent = Rational(a->offset);
    }

    if (const auto* k = std::get_if<Rational>(&exponent)) {
        if (const auto* c = const_value(base)) {
            if (*c == 0 && *k <= 0) {
                throw DomainError(offset, "zero raised to a non-positive power");
            }
            if (is_integer(*k)) {
                if (!k->get_num().fits_slong_p()) {
                    throw DomainError(offset, "exponent too large");
                }
                return ex::constant(pow_int(*c, k->get_num().get_si()));
            }
            if (*c < 0) {
                throw DomainError(offset, "non-integer power of a negative constant");
            }
            Rational root;
            if (k->get_den().fits_ulong_p() && k->get_num().fits_slong_p() && exact_root(*c, k->get_den().get_ui(), root)) {
                return ex::constant(pow_int(root, k->get_num().get_si()));
            }
        }
        if (*k == 0) {
            return ex::constant(Rational(1));
        }
        if (*k == 1) {
            return base;
        }
        return ex::pow(std::move(base), exponent);
    }

    const auto& affine = std::get<Affine>(exponent);
    const auto* c = const_value(base);
    if (c == nullptr || *c == 0) {
        throw DomainError(offset, "an n-dependent exponent needs a nonzero rational constant base");
    }
    if (*c > 0) {
        if (*c == 1) {
            return ex::constant(Rational(1));
        }
        return ex::pow(std::move(base), exponent);
    }
    Expr sign = minus_one_power(affine);
    const Rational magnitude = -*c;
    if (magnitude == 1) {
        return sign;
    }
    Expr power = ex::pow(ex::constant(magnitude), exponent);
    if (const auto* s = const_value(sign)) {
        return *s > 0 ? power : ex::neg(std::move(power));
    }
    return ex::mul(std::move(sign), std::move(power));
}

std::optional<Affine> to_affine(const Expr& e)
{
    auto p = as_polynomial(e);
    if (!p || p->degree() > 1 || !p->has_integer_coeffs()) {
        return std::nullopt;
    }
    return Affine{p->coeff(1).get_num(), p->coeff(0).get_num()};
}

class Parser {
public:
    explicit Parser(std::string_view src)
        : src_(src)
    {
    }

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) {
            if (src_[pos_] == '!') {
                fail(pos_, kAfterOperand, "factorial may be applied only once");
            }
            fail(pos_, {"'+'", "'-'", "'*'", "'/'", "end of input"}, std::string("unexpected '") + src_[pos_] + "'");
        }
        if (!implicit_sites_.empty()) {
            fail(implicit_sites_.front(), {"'*'"},
                 "implicit multiplication is allowed only inside factorial arguments and exponents");
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::size_t at, std::vector<std::string> expected, const std::string& what) const
    {
        std::string msg = what + " at offset " + std::to_string(at) + "; expected one of:";
        for (const auto& s : expected) {
            msg += " " + s;
        }
        throw ParseError(at, std::move(expected), msg);
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool at(char c)
    {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool eat(char c)
    {
        if (at(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!eat(c)) {
            fail(pos_, {std::string("'") + c + "'"}, pos_ < src_.size() ? std::string("unexpected '") + src_[pos_] + "'" : "unexpected end of input");
        }
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        while (true) {
            skip_ws();
            const std::size_t op_at = pos_;
            if (eat('+')) {
                lhs = fold_binary(BinaryOp::Add, std::move(lhs), parse_term(), op_at);
            } else if (eat('-')) {
                lhs = fold_binary(BinaryOp::Sub, std::move(lhs), parse_term(), op_at);
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term()
    {
        Expr lhs = parse_factor();
        while (true) {
            skip_ws();
            const std::size_t op_at = pos_;
            if (eat('*')) {
                lhs = fold_binary(BinaryOp::Mul, std::move(lhs), parse_factor(), op_at);
            } else if (eat('/')) {
                lhs = fold_binary(BinaryOp::Div, std::move(lhs), parse_factor(), op_at);
            } else {
                return lhs;
            }
        }
    }

    Expr parse_factor()
    {
        if (eat('-')) {
            return fold_neg(parse_power());
        }
        return parse_power();
    }

    Expr parse_power()
    {
        skip_ws();
        const std::size_t base_at = pos_;
        Expr base = parse_postfix();
        skip_ws();
        if (!eat('^')) {
            return base;
        }
        Exponent exponent = parse_exponent();
        Expr result = make_power(std::move(base), std::move(exponent), base_at);
        if (at('^')) {
            fail(pos_, {"'*'", "'/'", "'+'", "'-'", "')'", "end of input"}, "chained '^' needs parentheses");
        }
        return result;
    }

    Expr parse_postfix()
    {
        skip_ws();
        const std::size_t atom_at = pos_;
        const std::size_t sites_before = implicit_sites_.size();
        Expr atom = parse_atom();
        if (!at('!')) {
            return atom;
        }
        ++pos_;
        if (at('!')) {
            fail(pos_, {"'^'", "'*'", "'/'", "'+'", "'-'", "')'", "end of input"}, "factorial may be applied only once");
        }
        auto affine = to_affine(atom);
        if (!affine) {
            throw DomainError(atom_at, "factorial argument must be a*n + b with integer a, b");
        }
        if (affine->slope < 0 || affine->slope + affine->offset < 0) {
            throw DomainError(atom_at, "factorial argument must be nonnegative for every n >= 1");
        }
        implicit_sites_.resize(sites_before);
        return ex::factorial(*affine);
    }

    Rational parse_number(bool allow_ratio)
    {
        skip_ws();
        const std::size_t begin = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
                ++pos_;
            }
        }
        if (pos_ == begin || (pos_ == begin + 1 && src_[begin] == '.')) {
            fail(begin, {"number"}, "expected a number");
        }
        // Scientific exponent: 'e' followed by an optional sign and digits.
        if (pos_ + 1 < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (src_[q] == '+' || src_[q] == '-') {
                ++q;
            }
            if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q])) != 0) {
                while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q])) != 0) {
                    ++q;
                }
                pos_ = q;
            }
        }
        if (allow_ratio && pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) != 0) {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
                ++pos_;
            }
        }
        const std::string literal(src_.substr(begin, pos_ - begin));
        try {
            return parse_rational(literal);
        } catch (const DomainError&) {
            throw DomainError(begin, "division by zero in literal");
        }
    }

    std::string parse_ident()
    {
        const std::size_t begin = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
            ++pos_;
        }
        return std::string(src_.substr(begin, pos_ - begin));
    }

    Expr parse_group_body()
    {
        Expr e = parse_expr();
        expect(')');
        return e;
    }

    Expr parse_atom()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail(pos_, kOperandStart, "unexpected end of input");
        }
        const std::size_t begin = pos_;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
            Rational value = parse_number(false);
            if (pos_ < src_.size() && src_[pos_] == 'n' && (pos_ + 1 >= src_.size() || !is_ident_char(src_[pos_ + 1]))) {
                implicit_sites_.push_back(pos_);
                ++pos_;
                return ex::mul(ex::constant(value), ex::var());
            }
            return ex::constant(value);
        }
        if (c == '(') {
            ++pos_;
            return parse_group_body();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
            const std::string name = parse_ident();
            if (name == "n") {
                return ex::var();
            }
            if (name == "alt") {
                return ex::alt();
            }
            if (name == "log" || name == "sqrt" || name == "abs") {
                expect('(');
                const std::size_t arg_at = pos_;
                Expr arg = parse_group_body();
                if (name == "sqrt") {
                    return make_power(std::move(arg), Rational(1, 2), arg_at);
                }
                if (name == "abs") {
                    if (const auto* v = const_value(arg)) {
                        return ex::constant(abs(*v));
                    }
                    return ex::abs(std::move(arg));
                }
                if (contains_log(arg)) {
                    throw DomainError(arg_at, "nested logarithms are not supported");
                }
                if (const auto* v = const_value(arg)) {
                    if (*v <= 0) {
                        throw DomainError(arg_at, "logarithm of a non-positive constant");
                    }
                }
                return ex::log(std::move(arg));
            }
            fail(begin, kOperandStart, "unknown identifier '" + name + "'");
        }
        fail(begin, kOperandStart, std::string("unexpected '") + c + "'");
    }

    Exponent parse_exponent()
    {
        skip_ws();
        const std::size_t begin = pos_;
        if (pos_ >= src_.size()) {
            fail(pos_, {"signed rational literal", "'n'", "'('"}, "missing exponent");
        }
        const char c = src_[pos_];
        if (c == '-' || c == '+') {
            ++pos_;
            Rational v = parse_number(true);
            return c == '-' ? Rational(-v) : v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
            return parse_number(true);
        }
        if (c == 'n' && (pos_ + 1 >= src_.size() || !is_ident_char(src_[pos_ + 1]))) {
            ++pos_;
            return Affine{Integer(1), Integer(0)};
        }
        if (c == '(') {
            ++pos_;
            const std::size_t sites_before = implicit_sites_.size();
            Expr inner = parse_group_body();
            implicit_sites_.resize(sites_before);
            auto p = as_polynomial(inner);
            if (p && p->degree() <= 0) {
                return p->coeff(0);
            }
            if (p && p->degree() == 1 && p->has_integer_coeffs()) {
                return Affine{p->coeff(1).get_num(), p->coeff(0).get_num()};
            }
            throw DomainError(begin, "exponent must be a rational constant or a*n + b with integer a, b");
        }
        fail(begin, {"signed rational literal", "'n'", "'('"}, std::string("unexpected '") + c + "' in exponent");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<std::size_t> implicit_sites_;
};

}  // namespace

Term parse(std::string_view text)
{
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (static_cast<unsigned char>(text[i]) >= 0x80) {
            throw ParseError(i, kOperandStart, "non-ASCII character at offset " + std::to_string(i));
        }
    }
    Parser parser(text);
    return make_term(parser.parse_all());
}

}  // namespace raabe
