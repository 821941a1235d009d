#pragma once

#include <map>
#include <utility>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/field.hpp"

namespace puiseux {

// Exponent pair of one term k*x^a*y^b. x-exponents stay exact rationals in
// both backends: the exponent lattice drives the Newton polygon and must
// not degrade to floats.
struct TermKey {
    long y = 0;  // b, nonnegative integer
    Rat x = 0;   // a, nonnegative rational

    friend bool operator<(const TermKey& l, const TermKey& r) {
        if (l.y != r.y) return l.y < r.y;
        return l.x < r.x;
    }
    friend bool operator==(const TermKey& l, const TermKey& r) {
        return l.y == r.y && l.x == r.x;
    }
};

// Sparse bivariate polynomial in canonical form: no stored coefficient is
// zero (numeric backend: below the drop threshold), all exponents >= 0.
template <class K>
class XYPoly {
public:
    using Terms = std::map<TermKey, K>;

    XYPoly() = default;

    static XYPoly monomial(long y_exp, Rat x_exp, K coeff) {
        XYPoly f;
        f.add_term(y_exp, std::move(x_exp), std::move(coeff));
        f.canonicalize();
        return f;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // raw accumulation; callers canonicalize() once after a batch
    void add_term(long y_exp, Rat x_exp, K coeff) {
        TermKey key{y_exp, std::move(x_exp)};
        auto it = terms_.find(key);
        if (it == terms_.end())
            terms_.emplace(std::move(key), std::move(coeff));
        else
            it->second = it->second + coeff;
    }

    K coeff(long y_exp, const Rat& x_exp) const {
        auto it = terms_.find(TermKey{y_exp, x_exp});
        return it == terms_.end() ? FieldTraits<K>::zero() : it->second;
    }

    // drop exact zeros and, numerically, roundoff ghosts below
    // 2^(-precision/2) * (largest coefficient magnitude)
    void canonicalize() {
        if constexpr (FieldTraits<K>::exact) {
            for (auto it = terms_.begin(); it != terms_.end();)
                it = FieldTraits<K>::is_zero(it->second) ? terms_.erase(it) : std::next(it);
        } else {
            Real scale(0);
            for (const auto& [key, v] : terms_) scale = max(scale, FieldTraits<K>::magnitude(v));
            for (auto it = terms_.begin(); it != terms_.end();)
                it = FieldTraits<K>::negligible(it->second, scale) ? terms_.erase(it)
                                                                   : std::next(it);
        }
    }

    friend XYPoly operator+(const XYPoly& a, const XYPoly& b) {
        XYPoly out = a;
        for (const auto& [key, v] : b.terms_) out.add_term(key.y, key.x, v);
        out.canonicalize();
        return out;
    }

    friend XYPoly operator-(const XYPoly& a, const XYPoly& b) {
        XYPoly out = a;
        for (const auto& [key, v] : b.terms_) out.add_term(key.y, key.x, K(-v));
        out.canonicalize();
        return out;
    }

    friend XYPoly operator*(const XYPoly& a, const XYPoly& b) {
        XYPoly out;
        for (const auto& [ka, va] : a.terms_)
            for (const auto& [kb, vb] : b.terms_)
                out.add_term(ka.y + kb.y, ka.x + kb.x, va * vb);
        out.canonicalize();
        return out;
    }

    bool operator==(const XYPoly& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

// exponent pairs (b, a) of the nonzero terms
template <class K>
std::vector<std::pair<long, Rat>> support_points(const XYPoly<K>& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    std::vector<std::pair<long, Rat>> pts;
    pts.reserve(f.terms().size());
    for (const auto& [key, v] : f.terms()) pts.emplace_back(key.y, key.x);
    return pts;
}

// largest m with y^m dividing every term
template <class K>
long y_multiplicity(const XYPoly<K>& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    long m = f.terms().begin()->first.y;
    for (const auto& [key, v] : f.terms()) m = std::min(m, key.y);
    return m;
}

// the terms with y-exponent zero, as x_exp -> coeff
template <class K>
std::map<Rat, K> pure_x_part(const XYPoly<K>& f) {
    std::map<Rat, K> out;
    for (const auto& [key, v] : f.terms()) {
        if (key.y > 0) break;  // keys sorted by y first
        out.emplace(key.x, v);
    }
    return out;
}

// x^(-beta) * f(x, x^gamma * (c + y)), the Newton-Puiseux iteration step.
// Requires phi_segment(c) = 0 so the constant term cancels.
template <class K>
XYPoly<K> shift_substitute(const XYPoly<K>& f, const Rat& gamma, const K& c, const Rat& beta) {
    long max_b = 0;
    for (const auto& [key, v] : f.terms()) max_b = std::max(max_b, key.y);
    std::vector<K> c_pow(static_cast<std::size_t>(max_b) + 1, FieldTraits<K>::one());
    for (long j = 1; j <= max_b; ++j) c_pow[j] = c_pow[j - 1] * c;

    XYPoly<K> out;
    for (const auto& [key, v] : f.terms()) {
        const long b = key.y;
        const Rat x_exp = key.x + gamma * b - beta;
        // (c + y)^b expanded binomially
        for (long j = 0; j <= b; ++j) {
            K coeff = v * FieldTraits<K>::from_rat(Rat(binomial(b, j))) * c_pow[b - j];
            out.add_term(j, x_exp, std::move(coeff));
        }
    }
    out.canonicalize();

    for (const auto& [key, v] : out.terms()) {
        if (key.x < 0)
            throw NegativeResultExponent("shift produced x^(" + rat_str(key.x) +
                                         "); beta does not match the chosen segment");
        if (key.y == 0 && key.x == 0)
            throw ConstantTermNonzero("constant term survives; c is not a characteristic root");
    }
    return out;
}

// g(x, y) = f(x + x0, y + y0); defined for integer x-exponents only
template <class K>
XYPoly<K> translate(const XYPoly<K>& f, const K& x0, const K& y0) {
    long max_a = 0, max_b = 0;
    for (const auto& [key, v] : f.terms()) {
        if (!is_integer(key.x))
            throw FractionalExponent("translate requires integer x-exponents, found x^(" +
                                     rat_str(key.x) + ")");
        max_a = std::max(max_a, static_cast<long>(rat_num(key.x)));
        max_b = std::max(max_b, key.y);
    }
    std::vector<K> xp(static_cast<std::size_t>(max_a) + 1, FieldTraits<K>::one());
    std::vector<K> yp(static_cast<std::size_t>(max_b) + 1, FieldTraits<K>::one());
    for (long i = 1; i <= max_a; ++i) xp[i] = xp[i - 1] * x0;
    for (long i = 1; i <= max_b; ++i) yp[i] = yp[i - 1] * y0;

    XYPoly<K> out;
    for (const auto& [key, v] : f.terms()) {
        const long a = static_cast<long>(rat_num(key.x));
        const long b = key.y;
        for (long i = 0; i <= a; ++i)
            for (long j = 0; j <= b; ++j) {
                K coeff = v * FieldTraits<K>::from_rat(Rat(binomial(a, i) * binomial(b, j))) *
                          xp[a - i] * yp[b - j];
                out.add_term(j, Rat(i), std::move(coeff));
            }
    }
    out.canonicalize();
    return out;
}

}  // namespace puiseux
