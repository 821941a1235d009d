#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/unipoly.hpp"

namespace puiseux {

template <class K>
struct RootMult {
    K value;
    long multiplicity = 1;
};

namespace detail {

// p rendered in the unknown `c`, descending degree, for error messages
inline std::string poly_str(const UniPoly<Rat>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long d = p.degree(); d >= 0; --d) {
        const Rat& k = p[static_cast<std::size_t>(d)];
        if (k == 0) continue;
        if (!out.empty()) out += k > 0 ? " + " : " - ";
        else if (k < 0) out += "-";
        Rat a = abs(k);
        if (a != 1 || d == 0) out += rat_str(a);
        if (d > 0) {
            out += "c";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

inline std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> fs;
    auto take = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fs.emplace_back(p, e);
    };
    take(2);
    take(3);
    const Int bound = 1000000;
    for (Int d = 5; d * d <= n && d <= bound; d += 6) {
        take(d);
        take(d + 2);
    }
    // a cofactor above the trial bound is treated as prime; missed composite
    // divisors surface as NonRationalRoot instead of wrong roots
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

inline std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = ds.size();
        Int pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace detail

// Exact backend: all rational roots by rational-root enumeration plus
// synthetic-division deflation. Throws NonRationalRoot if a nonconstant
// factor with no rational root remains. `tol` is ignored.
inline std::vector<RootMult<Rat>> find_roots(const UniPoly<Rat>& p, const Real& = Real(0)) {
    if (p.is_zero()) throw ZeroPolynomial();
    std::vector<RootMult<Rat>> roots;
    UniPoly<Rat> cur = p;

    long ord = cur.order();
    if (ord > 0) {
        roots.push_back({Rat(0), ord});
        cur = cur.shift_down(ord);
    }
    if (cur.degree() < 1) return roots;

    // clear denominators and content to get a primitive integer polynomial
    Int denlcm = 1;
    for (const Rat& c : cur.coeffs()) denlcm = lcm(denlcm, rat_den(c));
    std::vector<Int> ic;
    ic.reserve(cur.coeffs().size());
    Int content = 0;
    for (const Rat& c : cur.coeffs()) {
        Int v = rat_num(c * denlcm);
        ic.push_back(v);
        content = gcd(content, abs(v));
    }
    if (content > 1)
        for (Int& v : ic) v /= content;

    const std::vector<Int> ps = detail::divisors(abs(ic.front()));
    const std::vector<Int> qs = detail::divisors(abs(ic.back()));
    for (const Int& q : qs) {
        for (const Int& pnum : ps) {
            if (gcd(pnum, q) != 1) continue;
            for (int sign : {1, -1}) {
                Rat cand = make_rat(sign * pnum, q);
                long mult = 0;
                while (cur.degree() >= 1 && cur.eval(cand) == 0) {
                    Rat rem;
                    cur = cur.deflate(cand, rem);
                    ++mult;
                }
                if (mult) roots.push_back({cand, mult});
            }
        }
    }
    if (cur.degree() >= 1) throw NonRationalRoot(detail::poly_str(cur));
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });
    return roots;
}

namespace detail {

inline Real at_current_precision(const Real& v) {
    Real out;
    mpfr_set(out.backend().data(), v.backend().data(), MPFR_RNDN);
    return out;
}

inline Complex at_current_precision(const Complex& v) {
    return Complex(at_current_precision(v.re), at_current_precision(v.im));
}

struct PrecisionGuard {
    explicit PrecisionGuard(unsigned bits) : saved(Real::default_precision()) {
        set_working_precision_bits(bits);
    }
    ~PrecisionGuard() { Real::default_precision(saved); }
    unsigned saved;
};

}  // namespace detail

// Numeric backend: simultaneous Durand-Kerner iteration at doubled working
// precision, then clustering of roots closer than `tol` (default
// 2^(-precision/2) scaled by the Cauchy bound). Cluster centroids are
// returned with the cluster size as multiplicity.
inline std::vector<RootMult<Complex>> find_roots(const UniPoly<Complex>& p,
                                                 const Real& tol = Real(0)) {
    if (p.is_zero()) throw ZeroPolynomial();
    const unsigned prec = working_precision_bits();

    // exact-zero low-order coefficients (characteristic polynomials carry a
    // c^ord factor exactly) deflate to an exact zero root up front
    long ord = p.order();
    if (ord > 0) {
        auto roots = find_roots(p.shift_down(ord), tol);
        roots.insert(roots.begin(), {Complex(0), ord});
        return roots;
    }

    const long n = p.degree();
    if (n < 1) return {};
    if (n == 1) {
        Complex r = -(p[0] / p[1]);
        return {{r, 1}};
    }

    detail::PrecisionGuard guard(2 * prec);
    const unsigned wp = working_precision_bits();

    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::at_current_precision(p[i]);
    const Complex lead = c.back();
    for (Complex& v : c) v /= lead;
    UniPoly<Complex> monic(c);

    Real maxc(0);
    for (long i = 0; i < n; ++i) maxc = max(maxc, monic[i].abs());
    Real cauchy = 1 + maxc;

    // perturbed roots of unity scaled by the Cauchy bound (deterministic)
    std::vector<Complex> z(static_cast<std::size_t>(n));
    Real two_pi = 2 * real_pi();
    for (long k = 0; k < n; ++k) {
        Real theta = two_pi * k / n + Real("0.4");
        Real radius = cauchy * (1 + Real(k) / (8 * n));
        z[k] = Complex(radius * cos(theta), radius * sin(theta));
    }

    const Real eps_stop = pow2(-static_cast<long>(wp) + 16) * max(Real(1), cauchy);
    const long max_iter = 600 + 60 * n;
    for (long iter = 0; iter < max_iter; ++iter) {
        Real maxstep(0);
        for (long k = 0; k < n; ++k) {
            Complex denom(1);
            for (long j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom.is_zero()) {
                // coincident iterates: nudge deterministically and retry
                z[k] += Complex(eps_stop * (k + 1), eps_stop);
                continue;
            }
            Complex step = monic.eval(z[k]) / denom;
            z[k] -= step;
            maxstep = max(maxstep, step.abs());
        }
        if (maxstep < eps_stop) break;
    }

    Real eval_scale = Real(n + 1) * max(Real(1), maxc) * pow(max(Real(1), cauchy), n);
    for (long k = 0; k < n; ++k)
        if (monic.eval(z[k]).abs() > pow2(-static_cast<long>(prec) / 2) * eval_scale)
            throw NoConvergence("root iteration failed at " + std::to_string(prec) + " bits");

    Real tol_eff = tol > 0 ? detail::at_current_precision(tol)
                           : pow2(-static_cast<long>(prec) / 2) * max(Real(1), cauchy);

    // union-find clustering
    std::vector<long> parent(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) parent[k] = k;
    auto find = [&](long a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (long a = 0; a < n; ++a)
        for (long b = a + 1; b < n; ++b)
            if ((z[a] - z[b]).abs() <= tol_eff) parent[find(a)] = find(b);

    std::vector<RootMult<Complex>> roots;
    for (long a = 0; a < n; ++a) {
        if (find(a) != a) continue;
        Complex sum(0);
        long size = 0;
        for (long b = 0; b < n; ++b)
            if (find(b) == a) {
                sum += z[b];
                ++size;
            }
        Complex centroid = sum / Complex(size);
        round_to_bits(centroid, prec);
        roots.push_back({centroid, size});
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return FieldTraits<Complex>::cmp(a.value, b.value) < 0;
    });
    return roots;
}

}  // namespace puiseux
