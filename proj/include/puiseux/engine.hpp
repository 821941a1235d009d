#pragma once

#include <functional>
#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/format.hpp"
#include "puiseux/polygon.hpp"
#include "puiseux/roots.hpp"
#include "puiseux/series.hpp"
#include "puiseux/xypoly.hpp"

namespace puiseux {

// fired once per expansion step, before the step is taken
struct StepEvent {
    std::string path_id;
    long depth = 0;
    const std::vector<HullPoint>& support;
    const std::vector<HullPoint>& chain;
    const Segment& chosen;
};

struct ExpandOptions {
    long max_terms = 8;
    long max_depth = 32;
    unsigned precision = 256;  // bits, numeric backend
    bool fast_path = true;
    bool parallel = false;  // explore top-level (segment, root) children concurrently
    Real root_tol = Real(0);
    std::function<void(const StepEvent&)> observer;
};

enum class Termination { Continue, ExactSolution, TermBudgetReached, NoSegment };

template <class K>
struct ExpansionState {
    XYPoly<K> current;                      // the iterate f_i
    std::vector<SeriesTerm<K>> accumulated; // series prefix
    Rat exponent_offset = 0;                // sum of gammas so far
    long depth = 0;
};

// diagnostics: one (segment, root) choice along a branch
template <class K>
struct BranchStep {
    Rat gamma, beta;
    K root;
    long multiplicity = 1;
};

template <class K>
struct Branch {
    PuiseuxSeries<K> series;
    long multiplicity = 1;  // > 1 for unresolved clusters and repeated factors
    std::string path_id;
    std::vector<BranchStep<K>> steps;
    bool used_fast_tail = false;
    XYPoly<K> final_current;  // the leaf iterate; empty when the fast tail ran
};

template <class K>
struct ExpandResult {
    std::vector<Branch<K>> branches;
    std::vector<std::string> diagnostics;
};

template <class K>
Termination detect_termination(const ExpansionState<K>& state, const ExpandOptions& opts) {
    if (pure_x_part(state.current).empty()) return Termination::ExactSolution;
    if (static_cast<long>(state.accumulated.size()) >= opts.max_terms ||
        state.depth >= opts.max_depth)
        return Termination::TermBudgetReached;
    if (expansion_segments(newton_polygon(to_hull_points(support_points(state.current)))).empty())
        return Termination::NoSegment;
    return Termination::Continue;
}

// one Newton-Puiseux step: record the term, substitute, normalize
template <class K>
ExpansionState<K> expand_step(const ExpansionState<K>& state, const Segment& seg,
                              const RootMult<K>& root) {
    ExpansionState<K> next;
    next.current = shift_substitute(state.current, seg.gamma, root.value, seg.beta);
    next.accumulated = state.accumulated;
    next.accumulated.push_back({state.exponent_offset + seg.gamma, root.value});
    next.exponent_offset = state.exponent_offset + seg.gamma;
    next.depth = state.depth + 1;
    return next;
}

namespace detail {

// f(x, S(x)) for a pure-x tail S, as a canonical x-series (exponent -> coeff)
template <class K>
std::map<Rat, K> eval_at_tail(const XYPoly<K>& f, const std::map<Rat, K>& tail) {
    long max_b = 0;
    for (const auto& [key, v] : f.terms()) max_b = std::max(max_b, key.y);

    // powers of the tail series
    std::vector<std::map<Rat, K>> pw(static_cast<std::size_t>(max_b) + 1);
    pw[0][Rat(0)] = FieldTraits<K>::one();
    for (long j = 1; j <= max_b; ++j) {
        for (const auto& [ea, ca] : pw[j - 1])
            for (const auto& [eb, cb] : tail) {
                K prod = ca * cb;
                auto [it, fresh] = pw[j].emplace(ea + eb, prod);
                if (!fresh) it->second = it->second + prod;
            }
    }

    std::map<Rat, K> out;
    for (const auto& [key, v] : f.terms())
        for (const auto& [e, c] : pw[static_cast<std::size_t>(key.y)]) {
            K prod = v * c;
            auto [it, fresh] = out.emplace(key.x + e, prod);
            if (!fresh) it->second = it->second + prod;
        }

    // canonicalize: exact zeros always, roundoff ghosts numerically
    Real scale(0);
    if constexpr (!FieldTraits<K>::exact)
        for (const auto& [e, c] : out) scale = max(scale, FieldTraits<K>::magnitude(c));
    for (auto it = out.begin(); it != out.end();)
        it = FieldTraits<K>::negligible(it->second, scale) ? out.erase(it) : std::next(it);
    return out;
}

// the single-segment, span-1, intercept-on-both-axes situation where every
// later coefficient solves a linear equation
template <class K>
bool tail_is_regular(const std::vector<Segment>& segs) {
    return segs.size() == 1 && segs[0].span == 1 && segs[0].start.b == 0 && segs[0].end.a == 0;
}

}  // namespace detail

// Regular-tail shortcut: with a span-1 polygon the cancellation equation for
// each following coefficient is linear, and exponents advance on the
// delta-lattice. Returns `count` coefficients for exponents delta, 2*delta,
// ..., zeros included; identical to running expand_step that many times.
template <class K>
std::vector<K> regular_tail(const ExpansionState<K>& state, const Rat& delta, long count) {
    auto segs = expansion_segments(newton_polygon(to_hull_points(support_points(state.current))));
    if (!detail::tail_is_regular<K>(segs))
        throw NotRegular("polygon is not a single span-1 segment with axis intercepts");
    if (delta <= 0 || !is_integer(segs[0].gamma / delta))
        throw NotRegular("gamma is not a multiple of the requested lattice step");
    for (const auto& [key, v] : state.current.terms())
        if (!is_integer(key.x / delta))
            throw NotRegular("x-exponents leave the requested lattice");

    const K g0 = state.current.coeff(1, Rat(0));  // the bare y term, the end vertex
    std::map<Rat, K> tail;
    std::vector<K> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long k = 1; k <= count; ++k) {
        const Rat e = delta * k;
        auto residual = detail::eval_at_tail(state.current, tail);
        if (residual.empty()) {
            out.resize(static_cast<std::size_t>(count), FieldTraits<K>::zero());
            break;
        }
        if (residual.begin()->first < e)
            throw NotRegular("residual order fell behind the lattice");
        auto it = residual.find(e);
        if (it == residual.end()) {
            out.push_back(FieldTraits<K>::zero());
            continue;
        }
        K c = K(-(it->second / g0));
        tail[e] = c;
        out.push_back(std::move(c));
    }
    return out;
}

namespace detail {

template <class K>
PuiseuxSeries<K> make_series(const std::vector<SeriesTerm<K>>& terms, bool exact,
                             Rat truncation_order) {
    PuiseuxSeries<K> s;
    s.terms = terms;
    s.ramification = compute_ramification(terms);
    s.exact = exact;
    s.truncation_order = exact ? Rat(0) : std::move(truncation_order);
    return s;
}

template <class K>
class Explorer {
public:
    Explorer(const ExpandOptions& opts) : opts_(opts) {}

    std::vector<Branch<K>> branches;

    void explore(const ExpansionState<K>& st, long mult, const std::string& path,
                 std::vector<BranchStep<K>> steps) {
        const bool exactish = pure_x_part(st.current).empty();

        if (static_cast<long>(st.accumulated.size()) >= opts_.max_terms ||
            st.depth >= opts_.max_depth) {
            emit_budget_leaf(st, mult, path, std::move(steps), exactish);
            return;
        }

        if (exactish && !st.accumulated.empty()) {
            Branch<K> b;
            b.series = make_series(st.accumulated, true, Rat(0));
            b.multiplicity = y_multiplicity(st.current);
            b.path_id = path;
            b.steps = steps;
            b.final_current = st.current;
            branches.push_back(std::move(b));
            // fall through: the iterate may still carry further branches
        }

        auto support = to_hull_points(support_points(st.current));
        auto chain = newton_polygon(support);
        auto segs = expansion_segments(chain);
        if (segs.empty()) {
            if (exactish || st.depth == 0) return;  // nothing left, or branchless input
            throw InconsistentState("no negative-slope segment but pure-x terms remain at depth " +
                                    std::to_string(st.depth) +
                                    "; numeric coefficient loss, retry at higher precision");
        }

        if (opts_.fast_path && !exactish && tail_is_regular<K>(segs)) {
            run_fast_tail(st, segs[0], path, std::move(steps));
            return;
        }

        // segments by increasing gamma = reverse chain order
        long child = 0;
        for (auto seg_it = segs.rbegin(); seg_it != segs.rend(); ++seg_it) {
            for (const auto& root : segment_roots(st, *seg_it, path)) {
                std::string child_path = path.empty() ? std::to_string(child)
                                                      : path + "-" + std::to_string(child);
                if (opts_.observer)
                    opts_.observer(StepEvent{child_path, st.depth, support, chain, *seg_it});
                auto child_steps = steps;
                child_steps.push_back(
                    {seg_it->gamma, seg_it->beta, root.value, root.multiplicity});
                explore(expand_step(st, *seg_it, root), root.multiplicity, child_path,
                        std::move(child_steps));
                ++child;
            }
        }
    }

    // nonzero characteristic roots of one segment, deterministically ordered
    std::vector<RootMult<K>> segment_roots(const ExpansionState<K>& st, const Segment& seg,
                                           const std::string& path) {
        UniPoly<K> phi = characteristic_poly(st.current, seg);
        std::vector<RootMult<K>> roots;
        try {
            roots = find_roots(phi, opts_.root_tol);
        } catch (const NonRationalRoot& e) {
            throw NonRationalRoot(e.factor, "branch path '" + (path.empty() ? "root" : path) +
                                                "', depth " + std::to_string(st.depth) +
                                                "; rerun with the numeric backend");
        }
        std::erase_if(roots, [](const RootMult<K>& r) { return FieldTraits<K>::is_zero(r.value); });
        return roots;
    }

private:
    void emit_budget_leaf(const ExpansionState<K>& st, long mult, const std::string& path,
                          std::vector<BranchStep<K>> steps, bool exactish) {
        Branch<K> b;
        b.multiplicity = mult > 0 ? mult : 1;
        b.path_id = path;
        b.steps = std::move(steps);
        b.final_current = st.current;
        b.series = make_series(st.accumulated, exactish, next_exponent(st));
        branches.push_back(std::move(b));
    }

    // exponent of the next (uncomputed) term: offset + smallest gamma left
    Rat next_exponent(const ExpansionState<K>& st) const {
        auto segs =
            expansion_segments(newton_polygon(to_hull_points(support_points(st.current))));
        if (segs.empty()) {
            auto px = pure_x_part(st.current);
            return st.exponent_offset + (px.empty() ? Rat(0) : px.begin()->first);
        }
        Rat g = segs.front().gamma;
        for (const auto& s : segs) g = min(g, s.gamma);
        return st.exponent_offset + g;
    }

    void run_fast_tail(const ExpansionState<K>& st, const Segment& seg, const std::string& path,
                       std::vector<BranchStep<K>> steps) {
        Int lattice_den = rat_den(seg.gamma);
        for (const auto& [key, v] : st.current.terms())
            lattice_den = lcm(lattice_den, rat_den(key.x));
        const Rat delta = make_rat(1, lattice_den);
        const K g0 = st.current.coeff(1, Rat(0));

        std::map<Rat, K> tail;
        auto terms = st.accumulated;
        bool exact = false;
        Rat trunc(0);
        long virtual_depth = st.depth;
        for (;;) {
            auto residual = eval_at_tail(st.current, tail);
            if (residual.empty()) {
                exact = true;
                break;
            }
            const Rat v = residual.begin()->first;
            if (static_cast<long>(terms.size()) >= opts_.max_terms ||
                virtual_depth >= opts_.max_depth) {
                trunc = st.exponent_offset + v;
                break;
            }
            K c = K(-(residual.begin()->second / g0));
            tail[v] = c;
            terms.push_back({st.exponent_offset + v, std::move(c)});
            ++virtual_depth;
        }

        Branch<K> b;
        b.series = make_series(terms, exact, std::move(trunc));
        b.multiplicity = 1;  // span-1 regularity forces a simple root
        b.path_id = path;
        b.steps = std::move(steps);
        b.used_fast_tail = true;
        branches.push_back(std::move(b));
    }

    const ExpandOptions& opts_;
};

template <class K>
std::string describe_step(const BranchStep<K>& s) {
    return "gamma=" + rat_str(s.gamma) + " beta=" + rat_str(s.beta) +
           " root=" + coeff_plain(s.root) + " mult=" + std::to_string(s.multiplicity);
}

}  // namespace detail

// Full Newton-Puiseux expansion: depth-first over every (segment, nonzero
// root) choice; one PuiseuxSeries per leaf, deterministically sorted.
template <class K>
ExpandResult<K> expand_all(const XYPoly<K>& f, const ExpandOptions& opts = {}) {
    if constexpr (!FieldTraits<K>::exact) set_working_precision_bits(opts.precision);
    if (f.is_zero()) throw ZeroPolynomial();

    ExpandResult<K> result;
    if (!FieldTraits<K>::is_zero(f.coeff(0, Rat(0)))) {
        result.diagnostics.push_back("NotThroughOrigin: f(0,0) != 0, no expansion at the origin");
        return result;
    }

    long max_b = 0;
    for (const auto& [key, v] : f.terms()) max_b = std::max(max_b, key.y);
    if (max_b == 0) {
        result.diagnostics.push_back("no y dependence; no branches");
        return result;
    }

    const long ym = y_multiplicity(f);
    if (ym >= 1) {
        Branch<K> b;
        b.series.exact = true;
        b.series.ramification = 1;
        b.multiplicity = ym;
        b.path_id = "y0";
        result.branches.push_back(std::move(b));
        result.diagnostics.push_back("y^" + std::to_string(ym) +
                                     " divides the input; exact branch y = 0 emitted");
    }

    ExpansionState<K> root;
    root.current = f;

    detail::Explorer<K> top(opts);
    const bool exactish_root = pure_x_part(f).empty();
    auto support = to_hull_points(support_points(f));
    auto chain = newton_polygon(support);
    auto segs = expansion_segments(chain);

    if (!segs.empty()) {
        // materialize the depth-0 children so they can run concurrently
        struct Child {
            ExpansionState<K> state;
            long mult;
            std::string path;
            std::vector<BranchStep<K>> steps;
        };
        std::vector<Child> children;
        long idx = 0;
        for (auto seg_it = segs.rbegin(); seg_it != segs.rend(); ++seg_it) {
            for (const auto& rt : top.segment_roots(root, *seg_it, "")) {
                std::string path = std::to_string(idx);
                if (opts.observer)
                    opts.observer(StepEvent{path, 0, support, chain, *seg_it});
                children.push_back(
                    {expand_step(root, *seg_it, rt), rt.multiplicity, path,
                     {{seg_it->gamma, seg_it->beta, rt.value, rt.multiplicity}}});
                ++idx;
            }
        }

        if (opts.parallel && children.size() > 1) {
            const unsigned bits = opts.precision;
            std::vector<std::future<std::vector<Branch<K>>>> futures;
            futures.reserve(children.size());
            for (const Child& ch : children)
                futures.push_back(std::async(std::launch::async, [&ch, &opts, bits]() {
                    if constexpr (!FieldTraits<K>::exact) set_working_precision_bits(bits);
                    detail::Explorer<K> worker(opts);
                    worker.explore(ch.state, ch.mult, ch.path, ch.steps);
                    return std::move(worker.branches);
                }));
            for (auto& fut : futures) {
                auto part = fut.get();
                for (auto& b : part) top.branches.push_back(std::move(b));
            }
        } else {
            for (const Child& ch : children) top.explore(ch.state, ch.mult, ch.path, ch.steps);
        }
    } else if (!exactish_root) {
        result.diagnostics.push_back("no negative-slope segment; no branches through the origin");
    }

    std::sort(top.branches.begin(), top.branches.end(),
              [](const Branch<K>& a, const Branch<K>& b) {
                  return series_less(a.series, b.series);
              });
    for (auto& b : top.branches) result.branches.push_back(std::move(b));

    for (const auto& b : result.branches) {
        if (b.path_id == "y0") continue;
        std::string line = "branch " + b.path_id + ":";
        for (const auto& s : b.steps) line += " [" + detail::describe_step(s) + "]";
        if (b.used_fast_tail) line += " [regular tail]";
        if (b.multiplicity > 1) line += " (multiplicity " + std::to_string(b.multiplicity) + ")";
        result.diagnostics.push_back(std::move(line));
    }
    return result;
}

}  // namespace puiseux
