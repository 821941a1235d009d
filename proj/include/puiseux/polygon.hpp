#pragma once

#include <algorithm>
#include <vector>

#include "puiseux/errors.hpp"
#include "puiseux/unipoly.hpp"
#include "puiseux/xypoly.hpp"

namespace puiseux {

// A support point (b, a): the term k*x^a*y^b plots to horizontal
// coordinate b, vertical coordinate a.
struct HullPoint {
    long b = 0;
    Rat a = 0;

    friend bool operator<(const HullPoint& l, const HullPoint& r) {
        if (l.b != r.b) return l.b < r.b;
        return l.a < r.a;
    }
    friend bool operator==(const HullPoint& l, const HullPoint& r) {
        return l.b == r.b && l.a == r.a;
    }
};

// One lower-hull edge of negative slope; gamma = -slope is the next
// exponent increment, beta the vertical-axis intercept of the supporting
// line (every support point satisfies a + gamma*b >= beta).
struct Segment {
    HullPoint start, end;  // end.b > start.b
    Rat slope, gamma, beta;
    long span = 0;  // end.b - start.b
};

inline std::vector<HullPoint> to_hull_points(const std::vector<std::pair<long, Rat>>& pts) {
    std::vector<HullPoint> out;
    out.reserve(pts.size());
    for (const auto& [b, a] : pts) out.push_back({b, a});
    return out;
}

// cross product (m - o) x (p - o); > 0 means o->m->p turns left
inline Rat cross(const HullPoint& o, const HullPoint& m, const HullPoint& p) {
    return Rat(m.b - o.b) * (p.a - o.a) - (m.a - o.a) * Rat(p.b - o.b);
}

// Lower-left hull chain: monotone-chain sweep in exact arithmetic over
// points sorted by (b, a), truncated at the first vertex reaching the
// minimal a. Interior collinear points are dropped from the chain (they
// still feed characteristic polynomials through their terms).
inline std::vector<HullPoint> newton_polygon(std::vector<HullPoint> pts) {
    if (pts.empty()) throw ZeroPolynomial();
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<HullPoint> hull;
    for (const HullPoint& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }

    Rat min_a = pts.front().a;
    for (const HullPoint& p : pts) min_a = min(min_a, p.a);
    std::size_t cut = 0;
    while (cut < hull.size() && hull[cut].a != min_a) ++cut;
    hull.resize(cut + 1);
    return hull;
}

// the strictly-negative-slope edges of a hull chain, in increasing b
// (equivalently decreasing gamma)
inline std::vector<Segment> expansion_segments(const std::vector<HullPoint>& chain) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const HullPoint& s = chain[i];
        const HullPoint& e = chain[i + 1];
        if (!(e.a < s.a)) continue;  // slope >= 0: branch not through origin
        Segment seg;
        seg.start = s;
        seg.end = e;
        seg.slope = (e.a - s.a) / Rat(e.b - s.b);
        seg.gamma = -seg.slope;
        seg.beta = s.a + seg.gamma * s.b;
        seg.span = e.b - s.b;
        segs.push_back(std::move(seg));
    }
    return segs;
}

// phi(c) = sum of coeff(b, a) * c^b over support points on the segment's
// supporting line a + gamma*b = beta. Returned raw, including any common
// c^(start.b) factor: deg = end.b, ord = start.b; the engine discards the
// root c = 0.
template <class K>
UniPoly<K> characteristic_poly(const XYPoly<K>& f, const Segment& seg) {
    std::vector<K> coeffs(static_cast<std::size_t>(seg.end.b) + 1, FieldTraits<K>::zero());
    bool any = false;
    for (const auto& [key, v] : f.terms()) {
        if (key.x + seg.gamma * key.y != seg.beta) continue;
        if (key.y > seg.end.b) continue;  // beyond the edge: other segments' business
        coeffs[static_cast<std::size_t>(key.y)] = v;
        any = true;
    }
    if (!any) throw EmptySegment();
    return UniPoly<K>(std::move(coeffs));
}

}  // namespace puiseux
