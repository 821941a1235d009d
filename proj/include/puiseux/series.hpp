#pragma once

#include <vector>

#include "puiseux/field.hpp"

namespace puiseux {

template <class K>
struct SeriesTerm {
    Rat exponent;  // > 0, strictly increasing along a series
    K coeff;       // nonzero

    bool operator==(const SeriesTerm& o) const {
        return exponent == o.exponent && coeff == o.coeff;
    }
};

// One branch y(x) = sum coeff * x^exponent through the origin.
// exact == true means the series is a polynomial solution (zero residual);
// otherwise truncation_order is the exponent of the next, uncomputed term.
template <class K>
struct PuiseuxSeries {
    std::vector<SeriesTerm<K>> terms;
    long ramification = 1;  // lcm of exponent denominators
    Rat truncation_order = 0;
    bool exact = false;

    bool operator==(const PuiseuxSeries& o) const {
        return terms == o.terms && ramification == o.ramification &&
               truncation_order == o.truncation_order && exact == o.exact;
    }
};

template <class K>
long compute_ramification(const std::vector<SeriesTerm<K>>& terms) {
    Int l = 1;
    for (const auto& t : terms) l = lcm(l, rat_den(t.exponent));
    return static_cast<long>(l);
}

// deterministic output order: lexicographic over (exponent, re, im) term by
// term; the empty series (the exact branch y = 0) sorts first
template <class K>
bool series_less(const PuiseuxSeries<K>& a, const PuiseuxSeries<K>& b) {
    std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.terms[i].exponent != b.terms[i].exponent)
            return a.terms[i].exponent < b.terms[i].exponent;
        int c = FieldTraits<K>::cmp(a.terms[i].coeff, b.terms[i].coeff);
        if (c != 0) return c < 0;
    }
    return a.terms.size() < b.terms.size();
}

}  // namespace puiseux
