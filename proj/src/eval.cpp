#include "raabe/errors.hpp"
#include "raabe/expr.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace raabe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kGuardBits = 32;

Integer affine_at(const Affine& a, std::int64_t n)
{
    return a.at(n);
}

unsigned long factorial_arg(const Affine& a, std::int64_t n)
{
    const Integer k = affine_at(a, n);
    if (k < 0 || !k.fits_ulong_p()) {
        throw DomainError("factorial argument out of range at n = " + std::to_string(n));
    }
    return k.get_ui();
}

long integer_exponent(const Integer& e)
{
    if (!e.fits_slong_p()) {
        throw DomainError("exponent out of range");
    }
    return e.get_si();
}

Rational exact_node(const Expr& e, std::int64_t n)
{
    return std::visit(
        overloaded{
            [](const ConstNode& x) { return x.value; },
            [n](const VarNode&) { return Rational(static_cast<long>(n)); },
            [n](const AltSignNode&) { return Rational(n % 2 == 1 ? 1 : -1); },
            [n](const NegNode& x) { return Rational(-exact_node(x.arg, n)); },
            [n](const BinaryNode& x) {
                const Rational l = exact_node(x.lhs, n);
                const Rational r = exact_node(x.rhs, n);
                switch (x.op) {
                case BinaryOp::Add: return Rational(l + r);
                case BinaryOp::Sub: return Rational(l - r);
                case BinaryOp::Mul: return Rational(l * r);
                case BinaryOp::Div:
                    if (r == 0) {
                        throw DomainError("division by zero at n = " + std::to_string(n));
                    }
                    return Rational(l / r);
                }
                return l;
            },
            [n](const PowNode& x) {
                if (const auto* k = std::get_if<Rational>(&x.exponent)) {
                    const Rational b = exact_node(x.base, n);
                    if (is_integer(*k)) {
                        return pow_int(b, integer_exponent(k->get_num()));
                    }
                    if (b < 0) {
                        throw DomainError("non-integer power of a negative value at n = " + std::to_string(n));
                    }
                    Rational root;
                    if (!k->get_den().fits_ulong_p() || !exact_root(b, k->get_den().get_ui(), root)) {
                        throw ExactUnavailable("irrational power at n = " + std::to_string(n));
                    }
                    return pow_int(root, integer_exponent(k->get_num()));
                }
                const Rational b = exact_node(x.base, n);
                return pow_int(b, integer_exponent(affine_at(std::get<Affine>(x.exponent), n)));
            },
            [n](const FactorialNode& x) {
                Integer f;
                mpz_fac_ui(f.get_mpz_t(), factorial_arg(x.arg, n));
                return Rational(f);
            },
            [](const LogNode&) -> Rational { throw ExactUnavailable("logarithm has no exact rational value"); },
            [n](const AbsNode& x) { return Rational(abs(exact_node(x.arg, n))); },
        },
        e.node().value);
}

BigFloat float_node(const Expr& e, std::int64_t n, int bits)
{
    return std::visit(
        overloaded{
            [bits](const ConstNode& x) { return BigFloat(x.value, bits); },
            [n, bits](const VarNode&) { return BigFloat(static_cast<long>(n), bits); },
            [n, bits](const AltSignNode&) { return BigFloat(n % 2 == 1 ? 1L : -1L, bits); },
            [n, bits](const NegNode& x) { return -float_node(x.arg, n, bits); },
            [n, bits](const BinaryNode& x) {
                const BigFloat l = float_node(x.lhs, n, bits);
                const BigFloat r = float_node(x.rhs, n, bits);
                switch (x.op) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div:
                    if (r.is_zero()) {
                        throw DomainError("division by zero at n = " + std::to_string(n));
                    }
                    return l / r;
                }
                return l;
            },
            [n, bits](const PowNode& x) {
                if (const auto* k = std::get_if<Rational>(&x.exponent)) {
                    return pow(float_node(x.base, n, bits), *k);
                }
                const auto* c = x.base.as<ConstNode>();
                const BigFloat base = c ? BigFloat(c->value, bits) : float_node(x.base, n, bits);
                return pow(base, Rational(affine_at(std::get<Affine>(x.exponent), n)));
            },
            [n, bits](const FactorialNode& x) { return factorial(factorial_arg(x.arg, n), bits); },
            [n, bits](const LogNode& x) {
                const BigFloat arg = float_node(x.arg, n, bits);
                if (arg.sign() <= 0) {
                    throw DomainError("logarithm of a non-positive value at n = " + std::to_string(n));
                }
                return log(arg);
            },
            [n, bits](const AbsNode& x) { return abs(float_node(x.arg, n, bits)); },
        },
        e.node().value);
}

// ---------------------------------------------------------------------------
// Start-index scan: every non-constant subterm must be defined and nonzero.

constexpr int kProbeBits = 192;
constexpr long kExactProbeLimit = 128;

struct ProbeFailure {};

struct Probe {
    std::optional<Rational> exact;
    BigFloat approx{kProbeBits};
};

Probe make_exact(Rational q)
{
    Probe p;
    p.approx = BigFloat(q, kProbeBits);
    p.exact = std::move(q);
    return p;
}

bool is_zero(const Probe& p)
{
    return p.exact ? *p.exact == 0 : p.approx.is_zero();
}

Probe probe(const Expr& e, std::int64_t n, bool nonzero = true);

Probe probe_node(const Expr& e, std::int64_t n)
{
    return std::visit(
        overloaded{
            [](const ConstNode& x) { return make_exact(x.value); },
            [n](const VarNode&) { return make_exact(Rational(static_cast<long>(n))); },
            [n](const AltSignNode&) { return make_exact(Rational(n % 2 == 1 ? 1 : -1)); },
            [n](const NegNode& x) {
                Probe p = probe(x.arg, n);
                Probe out;
                if (p.exact) {
                    out.exact = Rational(-*p.exact);
                }
                out.approx = -p.approx;
                return out;
            },
            [n](const BinaryNode& x) {
                // Summands may vanish individually; only factors and the sum itself may not.
                const bool additive = x.op == BinaryOp::Add || x.op == BinaryOp::Sub;
                const Probe l = probe(x.lhs, n, !additive);
                const Probe r = probe(x.rhs, n, !additive);
                if (x.op == BinaryOp::Div && is_zero(r)) {
                    throw ProbeFailure{};
                }
                if (l.exact && r.exact) {
                    switch (x.op) {
                    case BinaryOp::Add: return make_exact(*l.exact + *r.exact);
                    case BinaryOp::Sub: return make_exact(*l.exact - *r.exact);
                    case BinaryOp::Mul: return make_exact(*l.exact * *r.exact);
                    case BinaryOp::Div: return make_exact(*l.exact / *r.exact);
                    }
                }
                Probe out;
                switch (x.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: {
                    out.approx = x.op == BinaryOp::Add ? l.approx + r.approx : l.approx - r.approx;
                    // Cancellation down to rounding noise counts as zero.
                    BigFloat scale = abs(l.approx) + abs(r.approx);
                    mpfr_mul_2si(scale.get(), scale.get(), -(kProbeBits - 24), MPFR_RNDN);
                    if (abs(out.approx) <= scale) {
                        out.approx = BigFloat(kProbeBits);
                    }
                    break;
                }
                case BinaryOp::Mul: out.approx = l.approx * r.approx; break;
                case BinaryOp::Div: out.approx = l.approx / r.approx; break;
                }
                return out;
            },
            [n](const PowNode& x) {
                if (const auto* k = std::get_if<Rational>(&x.exponent)) {
                    const Probe b = probe(x.base, n);
                    if (is_zero(b) && *k < 0) {
                        throw ProbeFailure{};
                    }
                    if (!is_integer(*k) && b.approx.sign() < 0) {
                        throw ProbeFailure{};
                    }
                    if (b.exact) {
                        if (is_integer(*k)) {
                            return make_exact(pow_int(*b.exact, integer_exponent(k->get_num())));
                        }
                        Rational root;
                        if (exact_root(*b.exact, k->get_den().get_ui(), root)) {
                            return make_exact(pow_int(root, integer_exponent(k->get_num())));
                        }
                    }
                    Probe out;
                    out.approx = pow(b.approx, *k);
                    return out;
                }
                const auto& c = std::get<ConstNode>(x.base.node().value).value;
                const Integer exponent = affine_at(std::get<Affine>(x.exponent), n);
                if (abs(exponent) <= kExactProbeLimit) {
                    return make_exact(pow_int(c, exponent.get_si()));
                }
                Probe out;
                out.approx = pow(BigFloat(c, kProbeBits), Rational(exponent));
                return out;
            },
            [n](const FactorialNode& x) {
                const unsigned long k = factorial_arg(x.arg, n);
                if (k <= static_cast<unsigned long>(kExactProbeLimit)) {
                    Integer f;
                    mpz_fac_ui(f.get_mpz_t(), k);
                    return make_exact(Rational(f));
                }
                Probe out;
                out.approx = factorial(k, kProbeBits);
                return out;
            },
            [n](const LogNode& x) {
                const Probe a = probe(x.arg, n);
                if (a.approx.sign() <= 0) {
                    throw ProbeFailure{};
                }
                if (a.exact && *a.exact == 1) {
                    return make_exact(Rational(0));
                }
                Probe out;
                out.approx = log(a.approx);
                return out;
            },
            [n](const AbsNode& x) {
                Probe p = probe(x.arg, n);
                Probe out;
                if (p.exact) {
                    out.exact = Rational(abs(*p.exact));
                }
                out.approx = abs(p.approx);
                return out;
            },
        },
        e.node().value);
}

Probe probe(const Expr& e, std::int64_t n, bool nonzero)
{
    Probe p = probe_node(e, n);
    if (nonzero && e.as<ConstNode>() == nullptr && is_zero(p)) {
        throw ProbeFailure{};
    }
    return p;
}

// Sums that are rational functions, as integer numerator and denominator, so
// the scan can use integer Horner instead of exact rational evaluation.
struct IntRatFn {
    std::vector<Integer> num;
    std::vector<Integer> den;
    int sign = 1;
};

using ScanCache = std::unordered_map<const void*, IntRatFn>;

std::vector<Integer> integer_coeffs(const Polynomial& p, int& sign)
{
    const auto [scale, prim] = p.primitive_part();
    sign *= sgn(scale);
    std::vector<Integer> out;
    for (const auto& c : prim.coeffs()) {
        out.push_back(c.get_num());
    }
    return out;
}

int horner_sign(const std::vector<Integer>& c, std::int64_t n)
{
    Integer acc;
    const Integer x(static_cast<long>(n));
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
    }
    return sgn(acc);
}

void build_cache(const Expr& e, ScanCache& cache)
{
    if (const auto* b = e.as<BinaryNode>()) {
        if (b->op == BinaryOp::Add || b->op == BinaryOp::Sub) {
            if (auto f = as_rational_function(e)) {
                IntRatFn r;
                r.num = integer_coeffs(f->first, r.sign);
                r.den = integer_coeffs(f->second, r.sign);
                cache.emplace(e.identity(), std::move(r));
                return;
            }
        }
        build_cache(b->lhs, cache);
        build_cache(b->rhs, cache);
    } else if (const auto* ng = e.as<NegNode>()) {
        build_cache(ng->arg, cache);
    } else if (const auto* pw = e.as<PowNode>()) {
        build_cache(pw->base, cache);
    } else if (const auto* ab = e.as<AbsNode>()) {
        build_cache(ab->arg, cache);
    }
}

// Sign of a node at n without computing magnitudes where the structure
// decides it; sums and logarithms fall back to the full probe.
int quick_sign(const Expr& e, std::int64_t n, const ScanCache& cache)
{
    return std::visit(
        overloaded{
            [](const ConstNode& x) { return sgn(x.value); },
            [](const VarNode&) { return 1; },
            [n](const AltSignNode&) { return n % 2 == 1 ? 1 : -1; },
            [n, &cache](const NegNode& x) { return -quick_sign(x.arg, n, cache); },
            [&e, n, &cache](const BinaryNode& x) {
                if (x.op == BinaryOp::Add || x.op == BinaryOp::Sub) {
                    if (const auto it = cache.find(e.identity()); it != cache.end()) {
                        const int d = horner_sign(it->second.den, n);
                        if (d == 0) {
                            throw ProbeFailure{};
                        }
                        return it->second.sign * d * horner_sign(it->second.num, n);
                    }
                    return probe(e, n, false).approx.sign();
                }
                const int l = quick_sign(x.lhs, n, cache);
                const int r = quick_sign(x.rhs, n, cache);
                if (x.op == BinaryOp::Div && r == 0) {
                    throw ProbeFailure{};
                }
                return l * r;
            },
            [n, &cache](const PowNode& x) {
                const auto* k = std::get_if<Rational>(&x.exponent);
                if (k == nullptr) {
                    return 1;  // positive base
                }
                const int b = quick_sign(x.base, n, cache);
                if (b == 0) {
                    if (*k < 0) {
                        throw ProbeFailure{};
                    }
                    return 0;
                }
                if (!is_integer(*k)) {
                    if (b < 0) {
                        throw ProbeFailure{};
                    }
                    return 1;
                }
                return b < 0 && mpz_odd_p(k->get_num().get_mpz_t()) ? -1 : 1;
            },
            [n](const FactorialNode& x) {
                if (affine_at(x.arg, n) < 0) {
                    throw ProbeFailure{};
                }
                return 1;
            },
            [&e, n](const LogNode&) { return probe(e, n, false).approx.sign(); },
            [n, &cache](const AbsNode& x) { return quick_sign(x.arg, n, cache) == 0 ? 0 : 1; },
        },
        e.node().value);
}

bool defined_and_nonzero(const Expr& e, std::int64_t n, const ScanCache& cache)
{
    try {
        if (quick_sign(e, n, cache) == 0 && e.as<ConstNode>() == nullptr) {
            return false;
        }
        return true;
    } catch (const ProbeFailure&) {
        return false;
    } catch (const DomainError&) {
        return false;
    }
}

using RatFn = std::pair<Polynomial, Polynomial>;

struct Certificate {
    bool structural = true;
    Rational bound{0};

    void include(const Polynomial& p)
    {
        if (p.degree() >= 1) {
            bound = std::max(bound, positive_root_bound(p));
        }
    }
    void include(const RatFn& f)
    {
        include(f.first);
        include(f.second);
    }
};

void certify(const Expr& e, Certificate& cert)
{
    std::visit(
        overloaded{
            [](const ConstNode&) {},
            [](const VarNode&) {},
            [](const AltSignNode&) {},
            [](const FactorialNode&) {},
            [&](const NegNode& x) { certify(x.arg, cert); },
            [&](const AbsNode& x) { certify(x.arg, cert); },
            [&](const BinaryNode& x) {
                if (auto f = as_rational_function(e)) {
                    cert.include(*f);
                } else if (x.op == BinaryOp::Add || x.op == BinaryOp::Sub) {
                    cert.structural = false;
                }
                certify(x.lhs, cert);
                certify(x.rhs, cert);
            },
            [&](const PowNode& x) {
                if (auto f = as_rational_function(x.base)) {
                    cert.include(*f);
                }
                certify(x.base, cert);
            },
            [&](const LogNode& x) {
                if (auto f = as_rational_function(x.arg)) {
                    cert.include(*f);
                    cert.include(f->first - f->second);
                    // The argument must stay positive: its eventual sign is sign(lc(num) * lc(den)).
                    if (sgn(f->first.leading()) * sgn(f->second.leading()) <= 0) {
                        throw DomainError("logarithm argument is eventually non-positive");
                    }
                } else {
                    cert.structural = false;
                }
                certify(x.arg, cert);
            },
        },
        e.node().value);
}

constexpr std::int64_t kScanLimit = 1000;
constexpr std::int64_t kExtendedScanLimit = 1'000'000;

}  // namespace

std::optional<std::pair<Polynomial, Polynomial>> as_rational_function(const Expr& e)
{
    using RatFn = std::pair<Polynomial, Polynomial>;
    using Opt = std::optional<RatFn>;
    if (auto p = as_polynomial(e)) {
        return RatFn{*p, Polynomial(Rational(1))};
    }
    if (const auto* b = e.as<BinaryNode>()) {
        auto l = as_rational_function(b->lhs);
        auto r = l ? as_rational_function(b->rhs) : Opt{};
        if (!l || !r) {
            return std::nullopt;
        }
        switch (b->op) {
        case BinaryOp::Add: return RatFn{l->first * r->second + r->first * l->second, l->second * r->second};
        case BinaryOp::Sub: return RatFn{l->first * r->second - r->first * l->second, l->second * r->second};
        case BinaryOp::Mul: return RatFn{l->first * r->first, l->second * r->second};
        case BinaryOp::Div: return RatFn{l->first * r->second, l->second * r->first};
        }
    }
    if (const auto* ng = e.as<NegNode>()) {
        auto a = as_rational_function(ng->arg);
        return a ? Opt(RatFn{a->first.negated(), a->second}) : std::nullopt;
    }
    if (const auto* pw = e.as<PowNode>()) {
        const auto* k = std::get_if<Rational>(&pw->exponent);
        if (k && is_integer(*k) && k->get_num().fits_uint_p() ) {
            auto b = as_rational_function(pw->base);
            if (b) {
                const unsigned m = static_cast<unsigned>(k->get_num().get_ui());
                return RatFn{b->first.pow(m), b->second.pow(m)};
            }
        } else if (k && is_integer(*k) && Integer(-k->get_num()).fits_uint_p()) {
            auto b = as_rational_function(pw->base);
            if (b) {
                const unsigned m = static_cast<unsigned>(Integer(-k->get_num()).get_ui());
                return RatFn{b->second.pow(m), b->first.pow(m)};
            }
        }
    }
    return std::nullopt;
}

Rational eval_exact(const Expr& e, std::int64_t n)
{
    Rational v = exact_node(e, n);
    if (v == 0) {
        throw EvaluatesToZero(n);
    }
    return v;
}

BigFloat eval_float(const Expr& e, std::int64_t n, int bits)
{
    BigFloat v = float_node(e, n, bits + kGuardBits);
    if (v.is_zero()) {
        throw EvaluatesToZero(n);
    }
    return v.with_precision(bits);
}

Value eval(const Term& term, std::int64_t n, EvalMode mode)
{
    if (n < term.start_index) {
        throw DomainError("index " + std::to_string(n) + " precedes the start index " + std::to_string(term.start_index));
    }
    if (mode.kind == EvalMode::Kind::Exact) {
        return eval_exact(term.expr, n);
    }
    return eval_float(term.expr, n, mode.precision_bits);
}

double to_double(const Value& v)
{
    if (const auto* q = std::get_if<Rational>(&v)) {
        return raabe::to_double(*q);
    }
    return std::get<BigFloat>(v).to_double();
}

Term make_term(Expr expr)
{
    Certificate cert;
    certify(expr, cert);
    ScanCache cache;
    build_cache(expr, cache);

    std::int64_t last_bad = 0;
    for (std::int64_t n = 1; n <= kScanLimit; ++n) {
        if (!defined_and_nonzero(expr, n, cache)) {
            last_bad = n;
        }
    }

    bool certified = cert.structural;
    if (cert.bound > kScanLimit) {
        const Integer top = cert.bound.get_num() / cert.bound.get_den() + 1;
        const std::int64_t limit = top > kExtendedScanLimit ? kExtendedScanLimit : top.get_si();
        certified = certified && top <= kExtendedScanLimit;
        for (std::int64_t n = kScanLimit + 1; n <= limit; ++n) {
            if (!defined_and_nonzero(expr, n, cache)) {
                last_bad = n;
            }
        }
        if (last_bad == limit) {
            throw DomainError("term is zero or undefined throughout the scanned range");
        }
    } else if (last_bad == kScanLimit) {
        throw DomainError("term is zero or undefined throughout n = 1..1000");
    }
    return Term{std::move(expr), last_bad + 1, certified};
}

Term subterm(const Term& parent, Expr expr)
{
    return Term{std::move(expr), parent.start_index, parent.start_certified};
}

}  // namespace raabe
