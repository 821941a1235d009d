#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/roots.hpp"
#include "puiseux/series.hpp"
#include "puiseux/xypoly.hpp"

// Correctness oracles. oracle_expand re-derives branches by undetermined
// coefficients on an integer t-lattice and deliberately shares no hull or
// substitution code with the polygon/engine modules, so it can referee
// discrepancies (including the paper's own arithmetic slips).

namespace puiseux {

// univariate series in x with rational exponents >= 0, canonical sparse form
template <class K>
using XSeriesPoly = std::map<Rat, K>;

namespace vdetail {

template <class K>
void canonicalize_xseries(XSeriesPoly<K>& s) {
    Real scale(0);
    if constexpr (!FieldTraits<K>::exact)
        for (const auto& [e, c] : s) scale = max(scale, FieldTraits<K>::magnitude(c));
    for (auto it = s.begin(); it != s.end();)
        it = FieldTraits<K>::negligible(it->second, scale) ? s.erase(it) : std::next(it);
}

template <class K>
XSeriesPoly<K> xseries_mul(const XSeriesPoly<K>& a, const XSeriesPoly<K>& b) {
    XSeriesPoly<K> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            K prod = ca * cb;
            auto [it, fresh] = out.emplace(ea + eb, prod);
            if (!fresh) it->second = it->second + prod;
        }
    return out;
}

// s^b by binary exponentiation
template <class K>
XSeriesPoly<K> xseries_pow(const XSeriesPoly<K>& s, long b) {
    XSeriesPoly<K> acc{{Rat(0), FieldTraits<K>::one()}};
    XSeriesPoly<K> base = s;
    while (b > 0) {
        if (b & 1) acc = xseries_mul(acc, base);
        b >>= 1;
        if (b) base = xseries_mul(base, base);
    }
    return acc;
}

}  // namespace vdetail

// exact multinomial expansion of f(x, S(x)) for a truncated series S
template <class K>
XSeriesPoly<K> substitute_series(const XYPoly<K>& f, const PuiseuxSeries<K>& S) {
    XSeriesPoly<K> sx;
    for (const auto& t : S.terms) sx.emplace(t.exponent, t.coeff);

    std::map<long, XSeriesPoly<K>> powers;
    XSeriesPoly<K> out;
    for (const auto& [key, v] : f.terms()) {
        auto it = powers.find(key.y);
        if (it == powers.end()) it = powers.emplace(key.y, vdetail::xseries_pow(sx, key.y)).first;
        for (const auto& [e, c] : it->second) {
            K prod = v * c;
            auto [oit, fresh] = out.emplace(key.x + e, prod);
            if (!fresh) oit->second = oit->second + prod;
        }
    }
    vdetail::canonicalize_xseries(out);
    return out;
}

// minimal exponent of f(x, S(x)); nullopt encodes +infinity (exact solution)
template <class K>
std::optional<Rat> residual_valuation(const XYPoly<K>& f, const PuiseuxSeries<K>& S) {
    auto r = substitute_series(f, S);
    if (r.empty()) return std::nullopt;
    return r.begin()->first;
}

namespace vdetail {

// sparse polynomial in t over K: t-exponent -> coefficient
template <class K>
using TPoly = std::map<long, K>;

template <class K>
void canonicalize_tpoly(TPoly<K>& s, long horizon) {
    Real scale(0);
    if constexpr (!FieldTraits<K>::exact)
        for (const auto& [e, c] : s) scale = max(scale, FieldTraits<K>::magnitude(c));
    for (auto it = s.begin(); it != s.end();) {
        if (it->first > horizon || FieldTraits<K>::negligible(it->second, scale))
            it = s.erase(it);
        else
            ++it;
    }
}

template <class K>
TPoly<K> tpoly_mul(const TPoly<K>& a, const TPoly<K>& b, long horizon) {
    TPoly<K> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            if (ea + eb > horizon) continue;
            K prod = ca * cb;
            auto [it, fresh] = out.emplace(ea + eb, prod);
            if (!fresh) it->second = it->second + prod;
        }
    return out;
}

template <class K>
struct OraclePath {
    TPoly<K> tail;                       // solved coefficients, t-exponent -> value
    std::vector<std::pair<long, K>> terms;  // nonzero, in order
    bool dead = false;
    bool forked = false;  // shares a truncated prefix with a sibling

    // caches, rebuilt whenever the tail changes
    std::vector<TPoly<K>> dcoeffs;  // j -> sum_b C(b,j) F[b] * tail^(b-j)
    std::vector<long> dvals;        // valuations of the above (horizon+1 = empty)
};

}  // namespace vdetail

namespace vdetail {

template <class K>
struct OracleOutcome {
    std::vector<PuiseuxSeries<K>> series;
    bool collapsed = false;  // distinct paths agreed through the horizon
};

template <class K>
OracleOutcome<K> oracle_run(const XYPoly<K>& f, const Rat& gamma, const K& c, long max_terms) {
    if (f.is_zero()) throw ZeroPolynomial();
    if (max_terms < 1 || gamma <= 0) throw NoSolution("invalid leading term request");

    long deg_y = 0;
    Int e_int = rat_den(gamma);
    for (const auto& [key, v] : f.terms()) {
        deg_y = std::max(deg_y, key.y);
        e_int = lcm(e_int, rat_den(key.x));
    }
    // sub-ramification acquired after the leading term divides lcm(1..deg_y)
    for (long m = 2; m <= std::min(deg_y, 6L); ++m) e_int = lcm(e_int, Int(m));
    const long e = static_cast<long>(e_int);
    const long k0 = static_cast<long>(rat_num(gamma * e));
    const long horizon = k0 + e * (max_terms + 8);

    // f(t^e, y) with integer t-exponents, one sparse t-polynomial per y power
    std::vector<TPoly<K>> F(static_cast<std::size_t>(deg_y) + 1);
    bool overflow = false;
    for (const auto& [key, v] : f.terms()) {
        long idx = static_cast<long>(rat_num(key.x * e));
        if (idx > horizon) {
            overflow = true;
            continue;
        }
        F[static_cast<std::size_t>(key.y)][idx] = v;
    }

    // caches per path: dcoeffs[j] = sum_b C(b,j) F[b] tail^(b-j), so the
    // t^v coefficient of f(t^e, tail + a t^k) is sum_j dcoeffs[j][v-jk] a^j
    auto rebuild = [&](OraclePath<K>& path) {
        std::vector<TPoly<K>> pw(static_cast<std::size_t>(deg_y) + 1);
        pw[0] = TPoly<K>{{0, FieldTraits<K>::one()}};
        for (long b = 1; b <= deg_y; ++b)
            pw[static_cast<std::size_t>(b)] =
                tpoly_mul(pw[static_cast<std::size_t>(b - 1)], path.tail, horizon);

        path.dcoeffs.assign(static_cast<std::size_t>(deg_y) + 1, TPoly<K>{});
        path.dvals.assign(static_cast<std::size_t>(deg_y) + 1, horizon + 1);
        for (long j = 0; j <= deg_y; ++j) {
            TPoly<K>& out = path.dcoeffs[static_cast<std::size_t>(j)];
            for (long b = j; b <= deg_y; ++b) {
                const TPoly<K>& fb = F[static_cast<std::size_t>(b)];
                if (fb.empty()) continue;
                K binom = FieldTraits<K>::from_rat(Rat(binomial(b, j)));
                TPoly<K> part = tpoly_mul(fb, pw[static_cast<std::size_t>(b - j)], horizon);
                for (auto& [te, cv] : part) {
                    K prod = binom * cv;
                    auto [it, fresh] = out.emplace(te, prod);
                    if (!fresh) it->second = it->second + prod;
                }
            }
            canonicalize_tpoly(out, horizon);
            if (!out.empty()) path.dvals[static_cast<std::size_t>(j)] = out.begin()->first;
        }
    };

    std::vector<OraclePath<K>> paths(1);
    paths[0].tail[k0] = c;
    paths[0].terms.emplace_back(k0, c);
    rebuild(paths[0]);

    for (long k = k0 + 1; k <= horizon; ++k) {
        std::vector<OraclePath<K>> next;
        for (auto& path : paths) {
            // generic valuation of f(t^e, tail + a t^k) with a symbolic
            long v = path.dvals[0];
            for (long j = 1; j <= deg_y; ++j)
                if (path.dvals[static_cast<std::size_t>(j)] <= horizon)
                    v = std::min(v, path.dvals[static_cast<std::size_t>(j)] + j * k);
            if (v > horizon) {
                next.push_back(std::move(path));  // residual exhausted to the horizon
                continue;
            }

            std::vector<K> pc(static_cast<std::size_t>(deg_y) + 1, FieldTraits<K>::zero());
            long pdeg = 0;
            for (long j = 0; j <= deg_y; ++j) {
                long idx = v - j * k;
                if (idx < 0) break;
                const TPoly<K>& dj = path.dcoeffs[static_cast<std::size_t>(j)];
                auto it = dj.find(idx);
                if (it != dj.end()) {
                    pc[static_cast<std::size_t>(j)] = it->second;
                    pdeg = std::max(pdeg, j);
                }
            }
            if (pdeg == 0) continue;  // order v unreachable by any extension: dead prefix

            auto roots = find_roots(UniPoly<K>(pc), Real(0));
            for (std::size_t r = 0; r + 1 < roots.size(); ++r) {
                OraclePath<K> fork = path;
                if (!FieldTraits<K>::is_zero(roots[r].value)) {
                    fork.tail[k] = roots[r].value;
                    fork.terms.emplace_back(k, roots[r].value);
                    rebuild(fork);
                }
                next.push_back(std::move(fork));
            }
            if (!roots.empty()) {
                if (!FieldTraits<K>::is_zero(roots.back().value)) {
                    path.tail[k] = roots.back().value;
                    path.terms.emplace_back(k, roots.back().value);
                    rebuild(path);
                }
                next.push_back(std::move(path));
            }
            if (next.size() > 256) throw Error("oracle branch explosion");
        }
        paths = std::move(next);
        if (paths.empty()) throw NoSolution("no branch extends the requested leading term");
    }

    OracleOutcome<K> outcome;
    for (auto& path : paths) {
        PuiseuxSeries<K> s;
        bool truncated = false;
        for (const auto& [k, v] : path.terms) {
            if (static_cast<long>(s.terms.size()) >= max_terms) {
                s.truncation_order = make_rat(k, e);
                truncated = true;
                break;
            }
            s.terms.push_back({make_rat(k, e), v});
        }
        s.ramification = compute_ramification(s.terms);
        s.exact = !truncated && path.dcoeffs[0].empty() && !overflow;
        if (!s.exact && s.truncation_order == 0)
            s.truncation_order = make_rat(horizon + 1, e);
        outcome.series.push_back(std::move(s));
    }

    std::sort(outcome.series.begin(), outcome.series.end(),
              [](const PuiseuxSeries<K>& a, const PuiseuxSeries<K>& b) {
                  return series_less(a, b);
              });
    // distinct paths whose truncations coincide differ only beyond the horizon
    for (std::size_t i = 0; i + 1 < outcome.series.size();) {
        if (outcome.series[i].terms == outcome.series[i + 1].terms) {
            outcome.series[i].exact = false;
            outcome.series.erase(outcome.series.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            outcome.collapsed = true;
        } else {
            ++i;
        }
    }
    return outcome;
}

}  // namespace vdetail

// Every branch with the given leading term c*x^gamma, re-derived by
// undetermined coefficients: substitute x = t^e to clear denominators, then
// solve f(t^e, sum a_k t^k) = 0 order by order, branching on every root of
// each cancellation polynomial. Deterministically sorted, deduplicated.
template <class K>
std::vector<PuiseuxSeries<K>> oracle_expand_all(const XYPoly<K>& f, const Rat& gamma, const K& c,
                                                long max_terms) {
    return vdetail::oracle_run(f, gamma, c, max_terms).series;
}

// The branch matching the leading term; with several distinct candidates the
// one whose first differing coefficient sorts last is returned. Raises
// AmbiguousBranch when two solution paths are indistinguishable within the
// requested number of terms (raise the term count to separate them).
template <class K>
PuiseuxSeries<K> oracle_expand(const XYPoly<K>& f, const Rat& gamma, const K& c, long max_terms) {
    auto outcome = vdetail::oracle_run(f, gamma, c, max_terms);
    if (outcome.collapsed)
        throw AmbiguousBranch("several branches share the first " + std::to_string(max_terms) +
                              " terms; raise the term count");
    return outcome.series.back();
}

// least-squares slope of log|f(t, S(t))| against log t over the samples;
// +infinity when the residual is exactly zero at some sample
template <class K>
double numeric_residual_slope(const XYPoly<K>& f, const PuiseuxSeries<K>& S,
                              const std::vector<double>& samples = {1e-2, 1e-3, 1e-4}) {
    if (samples.size() < 3) throw Error("need at least 3 sample points");
    std::vector<double> xs, ys;
    for (double t : samples) {
        if (!(t > 0 && t <= 0.1)) throw Error("samples must lie in (0, 0.1]");
        Real tr(t);
        Complex y(0);
        for (const auto& term : S.terms)
            y += FieldTraits<K>::to_complex(term.coeff) * Complex(pow(tr, Real(term.exponent)));
        Complex r(0);
        for (const auto& [key, v] : f.terms())
            r += FieldTraits<K>::to_complex(v) * Complex(pow(tr, Real(key.x))) *
                 complex_pow(y, key.y);
        Real mag = r.abs();
        if (mag == 0) return std::numeric_limits<double>::infinity();
        xs.push_back(std::log(t));
        ys.push_back(Real(log(mag)).convert_to<double>());
    }
    double xbar = 0, ybar = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= static_cast<double>(xs.size());
    ybar /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xbar) * (ys[i] - ybar);
        den += (xs[i] - xbar) * (xs[i] - xbar);
    }
    return num / den;
}

}  // namespace puiseux
