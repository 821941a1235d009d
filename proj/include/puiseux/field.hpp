#pragma once

#include "puiseux/numeric.hpp"
#include "puiseux/rational.hpp"

namespace puiseux {

// Coefficient-field abstraction. The whole library is templated on the
// field K; the two instantiations are Rat (exact) and Complex (big float).
// One expansion run uses a single field throughout.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
    static constexpr bool exact = true;

    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_rat(const Rat& r) { return r; }
    static Rat from_long(long v) { return Rat(v); }

    static bool is_zero(const Rat& v) { return v == 0; }
    static Real magnitude(const Rat& v) { return abs(Real(v)); }

    // exact arithmetic never produces roundoff ghosts
    static bool negligible(const Rat& v, const Real&) { return v == 0; }

    static int cmp(const Rat& a, const Rat& b) {
        if (a < b) return -1;
        if (b < a) return 1;
        return 0;
    }

    static Complex to_complex(const Rat& v) { return Complex(v); }
};

template <>
struct FieldTraits<Complex> {
    static constexpr bool exact = false;

    static Complex zero() { return Complex(); }
    static Complex one() { return Complex(1); }
    static Complex from_rat(const Rat& r) { return Complex(r); }
    static Complex from_long(long v) { return Complex(v); }

    static bool is_zero(const Complex& v) { return v.is_zero(); }
    static Real magnitude(const Complex& v) { return v.abs(); }

    // drop threshold: 2^(-precision/2) * scale, with scale the largest
    // coefficient magnitude of the polynomial being canonicalized
    static bool negligible(const Complex& v, const Real& scale) {
        if (v.is_zero()) return true;
        if (scale == 0) return false;
        long half = static_cast<long>(working_precision_bits()) / 2;
        return v.abs() < pow2(-half) * scale;
    }

    static int cmp(const Complex& a, const Complex& b) {
        if (a.re < b.re) return -1;
        if (b.re < a.re) return 1;
        if (a.im < b.im) return -1;
        if (b.im < a.im) return 1;
        return 0;
    }

    static Complex to_complex(const Complex& v) { return v; }
};

}  // namespace puiseux
