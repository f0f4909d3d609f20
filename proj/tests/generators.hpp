#pragma once

// Random hypergeometric terms with ratio limit 1, as expression text.

#include <random>
#include <string>
#include <vector>

namespace raabe::testing {

inline int uniform(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string shifted_n(int b)
{
    if (b == 0) {
        return "n";
    }
    return "(n+" + std::to_string(b) + ")";
}

// Polynomial with positive coefficients, degree 1..3.
inline std::string positive_poly(std::mt19937& rng)
{
    const int deg = uniform(rng, 1, 3);
    std::string s;
    for (int d = deg; d >= 0; --d) {
        const int c = uniform(rng, d == deg ? 1 : 0, 9);
        if (c == 0) {
            continue;
        }
        if (!s.empty()) {
            s += "+";
        }
        s += std::to_string(c);
        if (d >= 1) {
            s += "*n";
        }
        if (d >= 2) {
            s += "^" + std::to_string(d);
        }
    }
    return "(" + s + ")";
}

// One factor whose ratio |a_n / a_(n+1)| tends to 1.
inline std::string random_block(std::mt19937& rng)
{
    switch (uniform(rng, 0, 3)) {
    case 0: {
        int k = uniform(rng, -3, 3);
        if (k == 0) {
            k = 1;
        }
        return shifted_n(uniform(rng, 0, 3)) + "^(" + std::to_string(k) + ")";
    }
    case 1:
        return "(2n+" + std::to_string(uniform(rng, 0, 3)) + ")!/(4^n*(n+" + std::to_string(uniform(rng, 0, 2)) +
               ")!*(n+" + std::to_string(uniform(rng, 0, 2)) + ")!)";
    case 2:
        return "(n+" + std::to_string(uniform(rng, 0, 4)) + ")!/(n+" + std::to_string(uniform(rng, 0, 4)) + ")!";
    default:
        return positive_poly(rng) + "/" + positive_poly(rng);
    }
}

/// A product of one to three blocks, alternating with probability `alt`.
inline std::string random_hypergeometric(std::mt19937& rng, double alt = 0.3)
{
    std::string s = "(" + random_block(rng) + ")";
    const int extra = uniform(rng, 0, 2);
    for (int i = 0; i < extra; ++i) {
        s += "*(" + random_block(rng) + ")";
    }
    if (std::bernoulli_distribution(alt)(rng)) {
        s = "alt*" + s;
    }
    return s;
}

/// P(n)/Q(n) with positive coefficients.
inline std::string random_positive_rational(std::mt19937& rng)
{
    if (uniform(rng, 0, 2) == 0) {
        return positive_poly(rng);
    }
    return positive_poly(rng) + "/" + positive_poly(rng);
}

}  // namespace raabe::testing
