#include "raabe/numeric.hpp"

#include "raabe/errors.hpp"
#include "raabe/hyperratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

namespace raabe {

namespace {

constexpr int kExtraBits = 64;

// Signed a_n / a_(n+1) as a tree of per-node ratios. Hypergeometric subtrees
// collapse to an exact rational-function leaf; logarithms and non-rational
// sums are evaluated directly at n and n + 1.
class RatioPlan {
public:
    explicit RatioPlan(const Expr& e)
    {
        if (auto r = signed_ratio(e)) {
            kind_ = Kind::Leaf;
            num_ = std::move(r->first);
            den_ = std::move(r->second);
            return;
        }
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, NegNode> || std::is_same_v<T, AbsNode>) {
                    *this = RatioPlan(x.arg);
                } else if constexpr (std::is_same_v<T, BinaryNode>) {
                    if (x.op == BinaryOp::Mul || x.op == BinaryOp::Div) {
                        kind_ = x.op == BinaryOp::Mul ? Kind::Mul : Kind::Div;
                        lhs_ = std::make_shared<RatioPlan>(x.lhs);
                        rhs_ = std::make_shared<RatioPlan>(x.rhs);
                    } else {
                        kind_ = Kind::Direct;
                        direct_ = e;
                    }
                } else if constexpr (std::is_same_v<T, PowNode>) {
                    kind_ = Kind::Pow;
                    lhs_ = std::make_shared<RatioPlan>(x.base);
                    exponent_ = std::get<Rational>(x.exponent);
                } else {
                    kind_ = Kind::Direct;
                    direct_ = e;
                }
            },
            e.node().value);
    }

    bool is_leaf() const { return kind_ == Kind::Leaf; }

    Rational exact(std::int64_t n) const
    {
        const Rational x(static_cast<long>(n));
        return num_(x) / den_(x);
    }

    BigFloat eval(std::int64_t n, int bits) const
    {
        switch (kind_) {
        case Kind::Leaf: return BigFloat(exact(n), bits);
        case Kind::Mul: return lhs_->eval(n, bits) * rhs_->eval(n, bits);
        case Kind::Div: return lhs_->eval(n, bits) / rhs_->eval(n, bits);
        case Kind::Pow: return pow(lhs_->eval(n, bits), exponent_);
        case Kind::Direct: break;
        }
        return eval_float(*direct_, n, bits) / eval_float(*direct_, n + 1, bits);
    }

private:
    enum class Kind { Leaf, Mul, Div, Pow, Direct };
    Kind kind_ = Kind::Direct;
    Polynomial num_;
    Polynomial den_;
    std::shared_ptr<RatioPlan> lhs_;
    std::shared_ptr<RatioPlan> rhs_;
    Rational exponent_;
    std::optional<Expr> direct_;
};

struct RatioPoint {
    BigFloat ratio;       // |a_n / a_(n+1)|
    BigFloat raabe;       // n (ratio - 1)
    BigFloat schlomilch;  // n log ratio
};

RatioPoint ratio_point(const RatioPlan& plan, std::int64_t n, int bits)
{
    const int work = bits + kExtraBits;
    const BigFloat nn(static_cast<long>(n), work);
    if (plan.is_leaf()) {
        const Rational r = abs(plan.exact(n));
        const Rational d = r - 1;
        const BigFloat df(d, work);
        return {BigFloat(r, bits), BigFloat(Rational(d * static_cast<long>(n)), bits),
                (nn * log1p(df)).with_precision(bits)};
    }
    const BigFloat r = abs(plan.eval(n, work));
    const BigFloat d = r - BigFloat(1L, work);
    return {r.with_precision(bits), (nn * d).with_precision(bits), (nn * log1p(d)).with_precision(bits)};
}

std::vector<RatioPoint> ratio_points(const Term& term, const std::vector<std::int64_t>& ns, int bits,
                                     unsigned threads)
{
    for (auto n : ns) {
        if (n < term.start_index) {
            throw DomainError("sample index " + std::to_string(n) + " precedes the start index");
        }
    }
    const RatioPlan plan(term.expr);
    std::vector<std::optional<RatioPoint>> out(ns.size());
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(ns.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < ns.size(); ++i) {
            out[i] = ratio_point(plan, ns[i], bits);
        }
    } else {
        // Strided split; each slot is written by exactly one worker.
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < ns.size(); i += workers) {
                        out[i] = ratio_point(plan, ns[i], bits);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    std::vector<RatioPoint> result;
    result.reserve(out.size());
    for (auto& p : out) {
        result.push_back(std::move(*p));
    }
    return result;
}

template <class Field>
std::vector<Sample> project(const std::vector<std::int64_t>& ns, const std::vector<RatioPoint>& points, Field field)
{
    std::vector<Sample> s;
    s.reserve(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        s.push_back({ns[i], points[i].*field});
    }
    return s;
}

double noise_floor(int bits, double scale)
{
    return 16.0 * std::ldexp(1.0, -bits / 2) * std::max(1.0, std::abs(scale));
}

// Richardson table T[k][j] over the doubling grid.
std::vector<std::vector<BigFloat>> richardson(const std::vector<Sample>& samples, int levels)
{
    std::vector<std::vector<BigFloat>> t(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        t[k].push_back(samples[k].value);
        const int top = std::min<int>(levels, static_cast<int>(k));
        for (int j = 1; j <= top; ++j) {
            const long w = 1L << j;
            const mpfr_prec_t bits = samples[k].value.precision();
            BigFloat num = BigFloat(w, bits) * t[k][j - 1] - t[k - 1][j - 1];
            t[k].push_back(num / BigFloat(w - 1, bits));
        }
    }
    return t;
}

std::vector<std::int64_t> tail_indices(std::int64_t last, int window, std::int64_t start)
{
    std::vector<std::int64_t> ns;
    for (std::int64_t n = std::max<std::int64_t>(start, last - window + 1); n <= last; ++n) {
        ns.push_back(n);
    }
    return ns;
}

bool grows_without_bound(const std::vector<Sample>& s)
{
    if (s.size() < 4) {
        return false;
    }
    const std::size_t k = s.size() - 1;
    for (std::size_t i = k - 2; i <= k; ++i) {
        const double a = std::abs(s[i - 1].value.to_double());
        const double b = std::abs(s[i].value.to_double());
        if (!(b >= 1.25 * a)) {
            return false;
        }
    }
    return std::abs(s[k].value.to_double()) > 1.0;
}

}  // namespace

std::vector<std::int64_t> EstimatorConfig::grid() const
{
    std::vector<std::int64_t> ns;
    for (int k = min_exponent; k <= max_exponent; ++k) {
        ns.push_back(std::int64_t{1} << k);
    }
    return ns;
}

void EstimatorConfig::validate() const
{
    if (precision_bits < 64) {
        throw Error("precision must be at least 64 bits");
    }
    if (min_exponent < 1 || max_exponent > 40 || max_exponent - min_exponent + 1 < 3) {
        throw Error("the sample grid needs at least 3 points within 2^1..2^40");
    }
    if (richardson_levels < 1) {
        throw Error("at least one Richardson level is required");
    }
    if (oscillation_window < 4) {
        throw Error("oscillation window must be at least 4");
    }
    if (!(tolerance > 0.0)) {
        throw Error("tolerance must be positive");
    }
}

std::vector<Sample> ratio_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                   unsigned threads)
{
    return project(ns, ratio_points(term, ns, precision_bits, threads), &RatioPoint::ratio);
}

std::vector<Sample> raabe_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                   unsigned threads)
{
    return project(ns, ratio_points(term, ns, precision_bits, threads), &RatioPoint::raabe);
}

std::vector<Sample> schlomilch_sequence(const Term& term, const std::vector<std::int64_t>& ns, int precision_bits,
                                        unsigned threads)
{
    return project(ns, ratio_points(term, ns, precision_bits, threads), &RatioPoint::schlomilch);
}

bool detect_oscillation(const std::vector<Sample>& consecutive, double tolerance)
{
    if (consecutive.size() < 4) {
        return false;
    }
    std::vector<BigFloat> d;
    for (std::size_t i = 1; i < consecutive.size(); ++i) {
        d.push_back(consecutive[i].value - consecutive[i - 1].value);
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(abs(d[i]).to_double() > tolerance)) {
            return false;
        }
        if (i + 1 < d.size() && d[i].sign() == d[i + 1].sign()) {
            return false;
        }
        // Compare like with like: every other difference shares a parity.
        if (i + 2 < d.size() && abs(d[i + 2]) < abs(d[i])) {
            return false;
        }
    }
    return true;
}

RaabeValue extrapolate(const std::vector<Sample>& samples, int levels, const std::vector<Sample>& tail,
                       double tolerance)
{
    if (detect_oscillation(tail, tolerance) || detect_oscillation(samples, tolerance)) {
        return undefined_value(UndefinedReason::OscillatingRatio,
                               "r_n alternates with non-decreasing amplitude over the trailing window");
    }
    if (levels < 1 || samples.size() < static_cast<std::size_t>(levels) + 1) {
        throw InsufficientSamples("Richardson extrapolation needs at least levels + 1 samples");
    }
    const auto t = richardson(samples, levels);
    const std::size_t k = samples.size() - 1;
    const int bits = static_cast<int>(samples.back().value.precision());

    // Three successive extrapolants at the highest level available.
    std::vector<double> e;
    const int top = std::min<int>(levels, static_cast<int>(k) - 2);
    if (top >= 1) {
        for (std::size_t row = k - 2; row <= k; ++row) {
            e.push_back(t[row][static_cast<std::size_t>(top)].to_double());
        }
    } else {
        for (int j = std::max(0, levels - 2); j <= levels; ++j) {
            e.push_back(t[k][static_cast<std::size_t>(j)].to_double());
        }
    }
    const double best = e.back();
    const double delta = std::abs(e[2] - e[1]);
    const double prev = std::abs(e[1] - e[0]);
    const double floor = noise_floor(bits, best);

    if (delta <= tolerance) {
        return numeric_value(best, delta + floor);
    }
    const double rho = prev > 0.0 ? delta / prev : std::numeric_limits<double>::infinity();
    if (rho < 0.5) {
        return numeric_value(best, delta * (1.0 + rho / (1.0 - rho)) + floor);
    }
    // Not contracting: the expansion is not in powers of 1/n (log-type terms).
    const double last = samples[k].value.to_double();
    const double step = std::abs(last - samples[k - 1].value.to_double());
    const double bound = std::log2(static_cast<double>(samples[k].n)) * step + std::abs(last - best) + floor;
    return numeric_value(last, bound, false);
}

RaabeValue estimate_raabe(const Term& term, const EstimatorConfig& config)
{
    NumericDiagnostics unused;
    return estimate_raabe(term, config, unused);
}

RaabeValue estimate_raabe(const Term& term, const EstimatorConfig& config, NumericDiagnostics& diagnostics)
{
    config.validate();
    std::vector<std::int64_t> ns;
    for (auto n : config.grid()) {
        if (n >= term.start_index) {
            ns.push_back(n);
        }
    }
    if (ns.size() < static_cast<std::size_t>(config.richardson_levels) + 1) {
        throw InsufficientSamples("too few grid points at or beyond the start index");
    }
    const int bits = config.precision_bits;
    const auto points = ratio_points(term, ns, bits, config.threads);

    const double last_ratio = points.back().ratio.to_double();
    if (!std::isfinite(last_ratio) || std::abs(last_ratio - 1.0) > 1e-3) {
        const RatioLimit limit = estimate_ratio_limit(term, config);
        return undefined_value(UndefinedReason::RatioLimitNotOne, "lim |a_n/a_(n+1)| ~ " + limit.to_string(), limit);
    }

    const auto raabe = project(ns, points, &RatioPoint::raabe);
    const auto schl = project(ns, points, &RatioPoint::schlomilch);
    if (grows_without_bound(raabe)) {
        return undefined_value(UndefinedReason::NotApplicable, "r_n grows without bound");
    }

    diagnostics.raw_decreasing = true;
    for (std::size_t i = 1; i < raabe.size(); ++i) {
        if (!(raabe[i].value < raabe[i - 1].value)) {
            diagnostics.raw_decreasing = false;
        }
    }

    const auto tail_ns = tail_indices(ns.back(), config.oscillation_window, term.start_index);
    const auto tail = ratio_points(term, tail_ns, bits, config.threads);
    const auto raabe_tail = project(tail_ns, tail, &RatioPoint::raabe);
    const auto schl_tail = project(tail_ns, tail, &RatioPoint::schlomilch);

    diagnostics.raabe = extrapolate(raabe, config.richardson_levels, raabe_tail, config.tolerance);
    diagnostics.schlomilch = extrapolate(schl, config.richardson_levels, schl_tail, config.tolerance);
    if (!is_defined(diagnostics.raabe)) {
        return diagnostics.raabe;
    }
    if (!is_defined(diagnostics.schlomilch)) {
        return diagnostics.schlomilch;
    }
    const auto& r = std::get<NumericValue>(diagnostics.raabe);
    const auto& s = std::get<NumericValue>(diagnostics.schlomilch);
    const double gap = std::abs(r.estimate - s.estimate);
    if (gap <= r.error_bound + s.error_bound) {
        return numeric_value(r.estimate, r.error_bound, r.extrapolated);
    }
    return numeric_value(r.estimate, std::max(r.error_bound, gap + s.error_bound), r.extrapolated && s.extrapolated);
}

RatioLimit estimate_ratio_limit(const Term& term, const EstimatorConfig& config)
{
    std::vector<std::int64_t> ns;
    for (auto n : config.grid()) {
        if (n >= term.start_index) {
            ns.push_back(n);
        }
    }
    const auto s = ratio_sequence(term, ns, config.precision_bits, config.threads);
    const std::size_t k = s.size() - 1;
    const double last = s[k].value.to_double();
    if (!std::isfinite(last) || (last > 1e3 && last >= 1.8 * s[k - 1].value.to_double())) {
        return RatioLimit::infinity();
    }
    const int levels = std::min<int>(config.richardson_levels, static_cast<int>(k));
    const RaabeValue e = extrapolate(s, levels, {}, config.tolerance);
    const auto* v = std::get_if<NumericValue>(&e);
    if (v == nullptr) {
        return RatioLimit::numeric(last, std::abs(last - s[k - 1].value.to_double()));
    }
    return RatioLimit::numeric(std::max(0.0, v->estimate), v->error_bound);
}

std::vector<TableRow> numeric_table(const Term& term, const EstimatorConfig& config)
{
    std::vector<std::int64_t> ns;
    for (auto n : config.grid()) {
        if (n >= term.start_index) {
            ns.push_back(n);
        }
    }
    const auto points = ratio_points(term, ns, config.precision_bits, config.threads);
    std::vector<TableRow> rows;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        rows.push_back({ns[i], points[i].raabe.to_double(), points[i].schlomilch.to_double()});
    }
    return rows;
}

}  // namespace raabe
