#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <string>

#include "puiseux/rational.hpp"

namespace puiseux {

// Variable-precision big float. Precision is controlled through the
// thread-default; worker threads must call set_working_precision_bits
// before producing values.
using Real = boost::multiprecision::mpfr_float;

inline unsigned digits10_for_bits(unsigned bits) {
    // smallest decimal request whose mpfr backing store holds >= bits
    return static_cast<unsigned>(bits * 0.30103) + 2;
}

inline void set_working_precision_bits(unsigned bits) {
    Real::default_precision(digits10_for_bits(bits));
}

inline unsigned working_precision_bits() {
    Real probe(0);
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

inline Real pow2(long k) { return ldexp(Real(1), static_cast<int>(k)); }

inline Real real_from_rat(const Rat& r) { return Real(r); }

// Complex number over Real. libmpc is not available here, and std::complex
// is only specified for the builtin float types, so this is a plain struct
// with the handful of operations the solvers need.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(const Rat& r) : re(r), im(0) {}

    static Complex i() { return Complex(Real(0), Real(1)); }

    bool operator==(const Complex& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Complex& o) const { return !(*this == o); }

    Complex operator-() const { return Complex(-re, -im); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real n = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }

    Complex conj() const { return Complex(re, -im); }
    Real norm() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm()); }
    bool is_zero() const { return re == 0 && im == 0; }
};

inline Complex complex_pow(const Complex& base, long e) {
    Complex acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// round a value to `bits` of precision in place
inline void round_to_bits(Real& v, unsigned bits) {
    mpfr_prec_round(v.backend().data(), static_cast<mpfr_prec_t>(bits), MPFR_RNDN);
}

inline void round_to_bits(Complex& v, unsigned bits) {
    round_to_bits(v.re, bits);
    round_to_bits(v.im, bits);
}

inline Real real_pi() {
    Real v;
    mpfr_const_pi(v.backend().data(), MPFR_RNDN);
    return v;
}

}  // namespace puiseux
