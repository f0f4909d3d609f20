#include "raabe/oracle.hpp"

#include "raabe/errors.hpp"
#include "raabe/hyperratio.hpp"

#include <algorithm>
#include <cmath>

namespace raabe {

namespace {

// Successive terms a_start, a_(start+1), ...; hypergeometric terms advance by
// a_(n+1) = a_n * Q(n) / P(n) instead of re-evaluating factorials.
class TermStream {
public:
    TermStream(const Term& term, EvalMode mode)
        : term_(term)
        , mode_(mode)
        , n_(term.start_index)
    {
        if (auto r = signed_ratio(term.expr)) {
            const Polynomial g = Polynomial::gcd(r->first, r->second);
            num_ = Polynomial::divmod(r->first, g).first;
            den_ = Polynomial::divmod(r->second, g).first;
            recurrence_ = true;
        }
        current_ = eval(term_, n_, mode_);
    }

    std::int64_t index() const { return n_; }
    const Value& value() const { return current_; }

    void advance()
    {
        const Rational x(static_cast<long>(n_));
        const Rational p = recurrence_ ? num_(x) : Rational(0);
        const Rational q = recurrence_ ? den_(x) : Rational(0);
        ++n_;
        if (!recurrence_ || p == 0 || q == 0) {
            current_ = eval(term_, n_, mode_);
            return;
        }
        const Rational step = q / p;
        if (auto* e = std::get_if<Rational>(&current_)) {
            *e *= step;
        } else {
            auto& f = std::get<BigFloat>(current_);
            f *= BigFloat(step, f.precision());
        }
    }

private:
    const Term& term_;
    EvalMode mode_;
    std::int64_t n_;
    bool recurrence_ = false;
    Polynomial num_;
    Polynomial den_;
    Value current_;
};

// Neumaier compensated summation.
class Accumulator {
public:
    explicit Accumulator(int bits)
        : sum_(0L, bits)
        , carry_(0L, bits)
    {
    }

    void add(const BigFloat& x)
    {
        BigFloat t = sum_ + x;
        if (abs(sum_) >= abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = std::move(t);
    }

    BigFloat value() const { return sum_ + carry_; }

private:
    BigFloat sum_;
    BigFloat carry_;
};

BigFloat as_float(const Value& v, int bits)
{
    if (const auto* q = std::get_if<Rational>(&v)) {
        return BigFloat(*q, bits);
    }
    return std::get<BigFloat>(v);
}

double round_down(const BigFloat& x)
{
    return mpfr_get_d(x.get(), MPFR_RNDD);
}

double round_up(const BigFloat& x)
{
    return mpfr_get_d(x.get(), MPFR_RNDU);
}

// log-spaced sample points, `per_decade` per decade, over [lo, hi].
std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int per_decade)
{
    std::vector<std::int64_t> pts;
    const double a = std::log10(static_cast<double>(lo));
    const double b = std::log10(static_cast<double>(hi));
    const int steps = static_cast<int>(std::lround((b - a) * per_decade));
    for (int i = 0; i <= steps; ++i) {
        const auto m = static_cast<std::int64_t>(std::llround(std::pow(10.0, a + (b - a) * i / steps)));
        if (pts.empty() || m > pts.back()) {
            pts.push_back(m);
        }
    }
    return pts;
}

struct LineFit {
    double slope;
    double residual;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const auto k = static_cast<double>(x.size());
    double sx = 0;
    double sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / k;
    const double my = sy / k;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (my + slope * (x[i] - mx));
        ss += r * r;
    }
    return {slope, std::sqrt(ss / k)};
}

void require_span(std::int64_t lo, std::int64_t hi)
{
    if (lo < 1 || hi < 100 * lo) {
        throw Error("the sampled range must span at least two decades");
    }
}

}  // namespace

std::vector<PartialSum> partial_sums(const Term& term, std::int64_t m_max, EvalMode mode)
{
    if (m_max < 1) {
        throw Error("m_max must be at least 1");
    }
    std::vector<PartialSum> out;
    if (m_max < term.start_index) {
        return out;
    }
    TermStream stream(term, mode);
    if (mode.kind == EvalMode::Kind::Exact) {
        Rational s(0);
        for (;;) {
            s += std::get<Rational>(stream.value());
            out.push_back({stream.index(), s});
            if (stream.index() == m_max) {
                break;
            }
            stream.advance();
        }
        return out;
    }
    Accumulator acc(mode.precision_bits);
    for (;;) {
        acc.add(std::get<BigFloat>(stream.value()));
        out.push_back({stream.index(), acc.value()});
        if (stream.index() == m_max) {
            break;
        }
        stream.advance();
    }
    return out;
}

Bracket alternating_bracket(const Term& term, std::int64_t m, int precision_bits)
{
    if (!sign_split(term).pattern.is_alternating()) {
        throw NotAlternating("term is not certified alternating");
    }
    if (m < term.start_index) {
        throw Error("bracket index precedes the start index");
    }
    const std::int64_t tail_from = std::max(term.start_index, m - 1000);
    TermStream stream(term, EvalMode::floating(precision_bits));
    Accumulator acc(precision_bits);
    BigFloat s_m(precision_bits);
    BigFloat previous(precision_bits);
    for (;;) {
        const BigFloat a = as_float(stream.value(), precision_bits);
        const std::int64_t n = stream.index();
        if (n > tail_from && !(abs(a) < previous)) {
            throw NotDecreasing("|a_n| is not decreasing at n = " + std::to_string(n));
        }
        previous = abs(a);
        acc.add(a);
        if (n == m) {
            s_m = acc.value();
        }
        if (n == m + 1) {
            break;
        }
        stream.advance();
    }
    const BigFloat s_next = acc.value();
    Bracket b;
    b.m = m;
    const bool ordered = s_m <= s_next;
    b.lower = round_down(ordered ? s_m : s_next);
    b.upper = round_up(ordered ? s_next : s_m);
    b.width = previous.to_double();
    return b;
}

SlopeFit abs_growth_slope(const Term& term, std::int64_t lo, std::int64_t hi, int precision_bits)
{
    require_span(lo, hi);
    const std::int64_t from = std::max(lo, hi / 100);
    const auto pts = log_grid(from, hi, 20);
    const std::int64_t d1 = hi / 10;
    const std::int64_t d2 = hi / 100;

    TermStream stream(term, EvalMode::floating(precision_bits));
    Accumulator acc(precision_bits);
    std::vector<double> xs;
    std::vector<double> ys;
    BigFloat t1(precision_bits);
    BigFloat t2(precision_bits);
    std::size_t next = 0;
    for (;;) {
        acc.add(abs(as_float(stream.value(), precision_bits)));
        const std::int64_t n = stream.index();
        if (n == d1 || n == d2) {
            (n == d1 ? t1 : t2) = acc.value();
        }
        while (next < pts.size() && pts[next] == n) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(log(acc.value()).to_double());
            ++next;
        }
        if (n >= hi) {
            break;
        }
        stream.advance();
    }
    const BigFloat t0 = acc.value();
    const LineFit f = fit_line(xs, ys);
    SlopeFit out;
    out.slope = f.slope;
    out.residual = f.residual;
    const BigFloat inc_low = t1 - t2;
    const BigFloat inc_high = t0 - t1;
    if (inc_high.is_zero()) {
        out.decade_ratio = 0.0;  // the sum has stopped moving at this precision
    } else {
        out.decade_ratio = inc_low.is_zero() ? INFINITY : (inc_high / inc_low).to_double();
    }
    out.log_growth = out.decade_ratio >= 0.8 && out.decade_ratio <= 1.25;
    return out;
}

double term_magnitude_slope(const Term& term, std::int64_t lo, std::int64_t hi, int precision_bits)
{
    require_span(lo, hi);
    const auto pts = log_grid(std::max(lo, hi / 100), hi, 20);
    TermStream stream(term, EvalMode::floating(precision_bits));
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t next = 0;
    for (;;) {
        const std::int64_t n = stream.index();
        while (next < pts.size() && pts[next] == n) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(log(abs(as_float(stream.value(), precision_bits))).to_double());
            ++next;
        }
        if (n >= hi) {
            break;
        }
        stream.advance();
    }
    return fit_line(xs, ys).slope;
}

OracleReport empirical_classify(const Term& term, const OracleConfig& config)
{
    OracleReport report;
    report.empirical.confidence = Confidence::Empirical;
    report.empirical.theorem = Theorem::None;
    report.empirical.p_kind = PKind::Undefined;

    const auto sums = partial_sums(term, config.slope_hi, EvalMode::floating(config.precision_bits));
    for (const auto& ps : sums) {
        std::int64_t m = ps.m;
        while (m % 10 == 0) {
            m /= 10;
        }
        if (m == 1) {
            report.partial_sum_samples.emplace_back(ps.m, to_double(ps.sum));
        }
    }

    const auto verdict = [&](Verdict v, std::string reason) {
        report.empirical.verdict = v;
        report.empirical.reason = std::move(reason);
        return report;
    };

    report.term_slope = term_magnitude_slope(term, config.slope_lo, config.slope_hi, config.precision_bits);
    report.abs_growth = abs_growth_slope(term, config.slope_lo, config.slope_hi, config.precision_bits);
    const double rho = report.abs_growth->decade_ratio;

    bool nested = false;
    const SignPattern sign = sign_split(term).pattern;
    if (sign.is_alternating()) {
        try {
            const Bracket coarse = alternating_bracket(term, config.bracket_m / 10, config.precision_bits);
            report.bracket = alternating_bracket(term, config.bracket_m, config.precision_bits);
            nested = coarse.contains(*report.bracket);
        } catch (const Error&) {
        }
    }

    if (report.term_slope >= -0.02) {
        return verdict(Verdict::Divergent, "term magnitudes do not decay");
    }
    if (rho < 0.8) {
        return verdict(Verdict::AbsolutelyConvergent, "absolute partial sums level off");
    }
    if (rho >= 0.95 && nested) {
        return verdict(Verdict::ConditionallyConvergent,
                       "absolute partial sums grow while nested alternating brackets shrink");
    }
    if (rho >= 0.95 && (sign.kind == SignPattern::Kind::ConstantPositive ||
                        sign.kind == SignPattern::Kind::ConstantNegative)) {
        return verdict(Verdict::Divergent, "partial sums of constant-sign terms keep growing");
    }
    return verdict(Verdict::Inconclusive, "evidence does not separate the cases");
}

}  // namespace raabe
