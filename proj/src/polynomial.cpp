#include "raabe/polynomial.hpp"

#include "raabe/errors.hpp"

#include <algorithm>
#include <sstream>

namespace raabe {

Polynomial::Polynomial(const Rational& constant)
{
    if (constant != 0) {
        coeffs_.push_back(constant);
    }
}

Polynomial::Polynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs))
{
    trim();
}

Polynomial Polynomial::variable()
{
    return monomial(1, Rational(1));
}

Polynomial Polynomial::monomial(int degree, const Rational& coeff)
{
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
    c.back() = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::linear(const Rational& a, const Rational& b)
{
    return Polynomial(std::vector<Rational>{b, a});
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational Polynomial::coeff(int i) const
{
    if (i < 0 || i > degree()) {
        return Rational(0);
    }
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const
{
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const
{
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

BigFloat Polynomial::operator()(const BigFloat& x) const
{
    BigFloat acc(0L, x.precision());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + BigFloat(*it, x.precision());
    }
    return acc;
}

long double Polynomial::eval_ld(long double x) const
{
    long double acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + BigFloat(*it, 80).to_long_double();
    }
    return acc;
}

Polynomial Polynomial::shifted(const Rational& s) const
{
    // Horner in the shifted variable: p(n+s) = (...(c_d (n+s) + c_{d-1})(n+s) + ...).
    const Polynomial step = linear(Rational(1), s);
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * step + Polynomial(*it);
    }
    return acc;
}

Polynomial Polynomial::pow(unsigned k) const
{
    Polynomial result(Rational(1));
    Polynomial base = *this;
    while (k > 0) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

Polynomial Polynomial::monic() const
{
    if (is_zero()) {
        return *this;
    }
    const Rational lc = leading();
    std::vector<Rational> c = coeffs_;
    for (auto& x : c) {
        x /= lc;
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::negated() const
{
    std::vector<Rational> c = coeffs_;
    for (auto& x : c) {
        x = -x;
    }
    return Polynomial(std::move(c));
}

std::pair<Rational, Polynomial> Polynomial::primitive_part() const
{
    if (is_zero()) {
        return {Rational(1), *this};
    }
    Integer den_lcm(1);
    for (const auto& c : coeffs_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<Integer> ints;
    ints.reserve(coeffs_.size());
    Integer content(0);
    for (const auto& c : coeffs_) {
        Rational scaled = c * den_lcm;
        ints.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints.back().get_mpz_t());
    }
    std::vector<Rational> out;
    out.reserve(ints.size());
    for (const auto& z : ints) {
        out.emplace_back(Integer(z / content));
    }
    return {make_rational(content, den_lcm), Polynomial(std::move(out))};
}

bool Polynomial::has_integer_coeffs() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        c[i] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
        c[i] += b.coeffs_[i];
    }
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    return a + b.negated();
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return Polynomial();
    }
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) {
        throw DomainError("polynomial division by zero");
    }
    std::vector<Rational> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) {
        return {Polynomial(), a};
    }
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
    const Rational lb = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        const Rational factor = rem[static_cast<std::size_t>(i)] / lb;
        quot[static_cast<std::size_t>(i - db)] = factor;
        if (factor == 0) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        // Keep intermediate coefficients small.
        a = std::move(b);
        b = r.primitive_part().second;
    }
    return a.monic();
}

std::string Polynomial::to_string(const std::string& var) const
{
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) {
            continue;
        }
        const bool negative = c < 0;
        if (negative) {
            c = -c;
        }
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const bool unit = c == 1;
        if (i == 0 || !unit) {
            out << (is_integer(c) ? raabe::to_string(c) : "(" + raabe::to_string(c) + ")");
            if (i > 0) {
                out << "*";
            }
        }
        if (i >= 1) {
            out << var;
        }
        if (i >= 2) {
            out << "^" << i;
        }
    }
    return out.str();
}

namespace {

// Least integer r with r^i >= x, for x >= 0.
Integer ceil_root(const Rational& x, unsigned long i)
{
    Integer c = x.get_num() / x.get_den();
    if (Rational(c) < x) {
        c += 1;
    }
    Integer r;
    mpz_root(r.get_mpz_t(), c.get_mpz_t(), i);
    Integer rp;
    mpz_pow_ui(rp.get_mpz_t(), r.get_mpz_t(), i);
    if (rp < c) {
        r += 1;
    }
    return r;
}

// 2 max |a_(d-i) / a_d|^(1/i), over every coefficient (Fujiwara) or only
// those whose sign opposes the leading one (Kioustelidis, positive roots).
Integer power_bound(const Polynomial& p, bool positive_only)
{
    const Rational lc = p.leading();
    const int d = p.degree();
    Integer m(0);
    for (int i = 1; i <= d; ++i) {
        const Rational q = p.coeff(d - i) / lc;
        if (q == 0 || (positive_only && q > 0)) {
            continue;
        }
        m = std::max(m, ceil_root(abs(q), static_cast<unsigned long>(i)));
    }
    return 2 * m;
}

}  // namespace

Rational root_bound(const Polynomial& p)
{
    return Rational(power_bound(p, false) + 1);
}

Rational positive_root_bound(const Polynomial& p)
{
    return Rational(power_bound(p, true) + 1);
}

std::optional<std::int64_t> sign_stable_from(const Polynomial& p, std::int64_t start, std::int64_t scan_limit)
{
    if (p.degree() <= 0) {
        return start;
    }
    const int eventual = sgn(p.leading());
    // Only n >= 1 matter, so a bound on the positive roots is enough there.
    Integer ceiling = (start >= 1 ? power_bound(p, true) : power_bound(p, false)) + 1;
    if (ceiling <= start) {
        return start;
    }
    if (ceiling > scan_limit) {
        return std::nullopt;
    }
    // Integer Horner on the primitive part is much cheaper than rationals.
    const auto prim = p.primitive_part();
    const int scale_sign = sgn(prim.first);
    const auto top = ceiling.get_si();
    std::int64_t last_bad = start - 1;
    Integer acc;
    for (std::int64_t n = start; n <= top; ++n) {
        acc = 0;
        const Integer x(static_cast<long>(n));
        for (int i = prim.second.degree(); i >= 0; --i) {
            acc = acc * x + prim.second.coeff(i).get_num();
        }
        if (sgn(acc) * scale_sign != eventual) {
            last_bad = n;
        }
    }
    return last_bad + 1;
}

bool positive_from(const Polynomial& p, std::int64_t start, std::int64_t scan_limit)
{
    if (p.is_zero()) {
        return false;
    }
    if (p.leading() < 0) {
        return false;
    }
    const auto stable = sign_stable_from(p, start, scan_limit);
    return stable && *stable == start;
}

}  // namespace raabe
