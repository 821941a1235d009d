#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace puiseux {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Canonical construction. The (num, den) constructor of mpq_rational
// canonicalizes sign and gcd as long as both arguments are mpz_int.
inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rat(std::move(num), std::move(den));
}

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline Rat rat_pow(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("0^negative");
        return 1 / rat_pow(base, -e);
    }
    Rat acc = 1, b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline Int int_pow(Int base, long e) {
    Int acc = 1;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

// "p/q", or just "p" for integers
inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (!is_integer(r)) s += "/" + rat_den(r).str();
    return s;
}

}  // namespace puiseux
