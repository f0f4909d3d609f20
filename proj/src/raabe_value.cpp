#include "raabe/raabe_value.hpp"

#include "raabe/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace raabe {

RatioLimit RatioLimit::of(const Rational& q)
{
    RatioLimit r;
    r.exact = q;
    r.approx = raabe::to_double(q);
    return r;
}

RatioLimit RatioLimit::infinity()
{
    RatioLimit r;
    r.infinite = true;
    r.approx = std::numeric_limits<double>::infinity();
    return r;
}

RatioLimit RatioLimit::numeric(double value, double error_bound)
{
    RatioLimit r;
    r.approx = value;
    r.error_bound = error_bound;
    return r;
}

RatioLimit RatioLimit::reciprocal() const
{
    if (infinite) {
        return of(Rational(0));
    }
    if (exact) {
        return *exact == 0 ? infinity() : of(Rational(1 / *exact));
    }
    if (approx == 0.0) {
        return infinity();
    }
    // First-order propagation of the bound through 1/x.
    return numeric(1.0 / approx, error_bound / (approx * approx));
}

std::string RatioLimit::to_string() const
{
    if (infinite) {
        return "inf";
    }
    if (exact) {
        return raabe::to_string(*exact);
    }
    std::ostringstream out;
    out.precision(10);
    out << approx << " +/- " << error_bound;
    return out.str();
}

bool is_exact(const RaabeValue& v)
{
    return std::holds_alternative<ExactValue>(v);
}

bool is_defined(const RaabeValue& v)
{
    return !std::holds_alternative<UndefinedValue>(v);
}

std::pair<double, double> interval(const RaabeValue& v)
{
    if (const auto* e = std::get_if<ExactValue>(&v)) {
        const double x = to_double(e->p);
        return {x, x};
    }
    if (const auto* n = std::get_if<NumericValue>(&v)) {
        return {n->estimate - n->error_bound, n->estimate + n->error_bound};
    }
    throw Error("undefined Raabe value has no interval");
}

std::string to_string(UndefinedReason r)
{
    switch (r) {
    case UndefinedReason::RatioLimitNotOne: return "RatioLimitNotOne";
    case UndefinedReason::OscillatingRatio: return "OscillatingRatio";
    case UndefinedReason::NotApplicable: break;
    }
    return "NotApplicable";
}

UndefinedReason undefined_reason_from_string(const std::string& s)
{
    if (s == "RatioLimitNotOne") {
        return UndefinedReason::RatioLimitNotOne;
    }
    if (s == "OscillatingRatio") {
        return UndefinedReason::OscillatingRatio;
    }
    if (s == "NotApplicable") {
        return UndefinedReason::NotApplicable;
    }
    throw Error("unknown undefined reason: " + s);
}

std::string to_string(const RaabeValue& v)
{
    if (const auto* e = std::get_if<ExactValue>(&v)) {
        return "Exact(" + to_string(e->p) + ")";
    }
    if (const auto* n = std::get_if<NumericValue>(&v)) {
        std::ostringstream out;
        out.precision(12);
        out << "Numeric(" << n->estimate << " +/- " << n->error_bound << ")";
        return out.str();
    }
    const auto& u = std::get<UndefinedValue>(v);
    return "Undefined(" + to_string(u.reason) + ")";
}

}  // namespace raabe
