#pragma once

#include <utility>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/field.hpp"

namespace puiseux {

// Dense univariate polynomial over the coefficient field; index = degree.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector).
template <class K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(K v) { return UniPoly(std::vector<K>{std::move(v)}); }

    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    // index of the lowest nonzero coefficient; -1 for the zero polynomial
    long order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!FieldTraits<K>::is_zero(c_[i])) return static_cast<long>(i);
        return -1;
    }

    const K& operator[](std::size_t i) const {
        static const K kZero = FieldTraits<K>::zero();
        return i < c_.size() ? c_[i] : kZero;
    }

    void set(std::size_t i, K v) {
        if (i >= c_.size()) c_.resize(i + 1, FieldTraits<K>::zero());
        c_[i] = std::move(v);
        trim();
    }

    K eval(const K& z) const {
        K acc = FieldTraits<K>::zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<K> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * FieldTraits<K>::from_long(static_cast<long>(i));
        return UniPoly(std::move(d));
    }

    // divide by (z - r); the remainder p(r) is returned through `remainder`
    UniPoly deflate(const K& r, K& remainder) const {
        if (c_.empty()) {
            remainder = FieldTraits<K>::zero();
            return UniPoly();
        }
        std::vector<K> q(c_.size() - 1, FieldTraits<K>::zero());
        K acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            q[i] = acc;
            acc = acc * r + c_[i];
        }
        remainder = std::move(acc);
        return UniPoly(std::move(q));
    }

    // divide by z^k (requires order() >= k)
    UniPoly shift_down(long k) const {
        std::vector<K> q(c_.begin() + k, c_.end());
        return UniPoly(std::move(q));
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && FieldTraits<K>::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<K> c_;
};

}  // namespace puiseux
