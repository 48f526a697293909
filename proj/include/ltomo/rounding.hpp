#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <queue>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/linesum.hpp"
#include "ltomo/lstsq.hpp"
#include "ltomo/matrix.hpp"

namespace ltomo {

/// Strictly increasing admissible output levels z_1 < ... < z_m.
class GreyGrid {
public:
    explicit GreyGrid(RatVec levels) : levels_(std::move(levels)) {
        if (levels_.empty()) throw EmptySet();
        for (std::size_t i = 1; i < levels_.size(); ++i)
            if (levels_[i] <= levels_[i - 1]) throw ParseError("grid levels must strictly increase");
    }

    const RatVec& levels() const { return levels_; }
    const Rational& min() const { return levels_.front(); }
    const Rational& max() const { return levels_.back(); }

    /// Maximal gap z between consecutive levels; 0 for a single level.
    Rational gap() const {
        Rational z = 0;
        for (std::size_t i = 1; i < levels_.size(); ++i) z = std::max(z, Rational(levels_[i] - levels_[i - 1]));
        return z;
    }

    bool contains(const Rational& v) const {
        return std::binary_search(levels_.begin(), levels_.end(), v);
    }

    /// Largest level <= v; v must be >= min().
    const Rational& level_below(const Rational& v) const {
        auto it = std::upper_bound(levels_.begin(), levels_.end(), v);
        if (it == levels_.begin()) throw OutOfRange("value below grid");
        return *(it - 1);
    }

    /// Smallest level >= v; v must be <= max().
    const Rational& level_above(const Rational& v) const {
        auto it = std::lower_bound(levels_.begin(), levels_.end(), v);
        if (it == levels_.end()) throw OutOfRange("value above grid");
        return *it;
    }

    /// Nearest level; exact midpoints round down.
    const Rational& nearest(const Rational& v) const {
        if (v <= min()) return min();
        if (v >= max()) return max();
        const Rational& lo = level_below(v);
        const Rational& hi = level_above(v);
        return (v - lo <= hi - v) ? lo : hi;
    }

private:
    RatVec levels_;
};

/// Ground set with targets and a family of subsets; degree k is the maximal
/// number of family sets containing one element.
struct RoundingInstance {
    RatVec targets;                              // alpha_i
    std::vector<std::vector<std::size_t>> sets;  // each E as ascending indices

    std::size_t degree() const {
        std::vector<std::size_t> deg(targets.size(), 0);
        for (const auto& e : sets) {
            if (e.empty()) throw EmptySet();
            for (auto i : e) {
                if (i >= targets.size()) throw OutOfRange("set element out of range");
                ++deg[i];
            }
        }
        std::size_t k = 0;
        for (auto d : deg) k = std::max(k, d);
        return k;
    }
};

struct RoundingStep {
    char case_tag;                     // 'a', 'b' or 'c'
    std::vector<std::size_t> frozen;   // indices fixed in this step
    std::size_t active_before;
};

struct RoundingTrace {
    std::vector<RoundingStep> steps;
};

/// Rounds targets to grid levels so that every set sum moves by at most
/// (k-1)z, following the constructive Beck-Fiala scheme: keep an active set,
/// move along an exact nullspace direction of the heavy sets until some
/// coordinate lands on a level, snap the rest once no set is heavy.
inline std::pair<RatVec, RoundingTrace> beck_fiala_round(const RoundingInstance& inst,
                                                         const GreyGrid& grid) {
    const std::size_t s = inst.targets.size();
    const std::size_t k = inst.degree();
    if (k < 2) throw DegreeTooSmall();
    for (const auto& t : inst.targets)
        if (t < grid.min() || t > grid.max()) throw OutOfRange("target outside [z_1, z_m]");

    RatVec a = inst.targets;
    std::vector<bool> active(s);
    for (std::size_t i = 0; i < s; ++i) active[i] = !grid.contains(a[i]);

    RoundingTrace trace;
    while (true) {
        std::vector<std::size_t> Y;
        for (std::size_t i = 0; i < s; ++i)
            if (active[i]) Y.push_back(i);
        if (Y.empty()) break;

        std::vector<std::size_t> heavy;  // indices into inst.sets
        for (std::size_t e = 0; e < inst.sets.size(); ++e) {
            std::size_t cnt = 0;
            for (auto i : inst.sets[e])
                if (active[i]) ++cnt;
            if (cnt >= k) heavy.push_back(e);
        }

        if (heavy.empty() || heavy.size() >= Y.size()) {
            char tag = heavy.empty() ? 'a' : 'c';
            if (tag == 'c' && heavy.size() != Y.size())
                throw InternalError("heavy-set count exceeds active-set size");
            RoundingStep step{tag, Y, Y.size()};
            // Snap to the level nearest the current value, not the original
            // target: heavy sets keep their sums only in aggregate, so
            // snapping relative to the targets could lose the compensation
            // between drifted coordinates and overshoot (k-1)z.
            for (auto i : Y) {
                a[i] = grid.nearest(a[i]);
                active[i] = false;
            }
            trace.steps.push_back(std::move(step));
            break;
        }

        // Case (b): an exact nullspace direction of the heavy incidence rows.
        std::vector<std::size_t> pos(s, SIZE_MAX);
        for (std::size_t j = 0; j < Y.size(); ++j) pos[Y[j]] = j;
        RationalMatrix M(heavy.size(), Y.size());
        for (std::size_t r = 0; r < heavy.size(); ++r)
            for (auto i : inst.sets[heavy[r]])
                if (pos[i] != SIZE_MAX) M(r, pos[i]) = 1;
        auto basis = nullspace(M);
        if (basis.empty()) throw InternalError("no nullspace direction in case (b)");
        const RatVec& beta = basis.front();

        // Smallest t >= 0 putting some active coordinate on a grid level.
        bool have_t = false;
        Rational t0 = 0;
        for (std::size_t j = 0; j < Y.size(); ++j) {
            if (beta[j] == 0) continue;
            const Rational& cur = a[Y[j]];
            const Rational& target = beta[j] > 0 ? grid.level_above(cur) : grid.level_below(cur);
            Rational t = (target - cur) / beta[j];
            if (!have_t || t < t0) {
                t0 = t;
                have_t = true;
            }
        }
        if (!have_t) throw InternalError("nullspace direction moves no active coordinate");

        RoundingStep step{'b', {}, Y.size()};
        for (std::size_t j = 0; j < Y.size(); ++j)
            if (beta[j] != 0) a[Y[j]] += t0 * beta[j];
        for (auto i : Y)
            if (grid.contains(a[i])) {
                active[i] = false;
                step.frozen.push_back(i);
            }
        if (step.frozen.empty()) throw InternalError("case (b) froze no coordinate");
        trace.steps.push_back(std::move(step));
    }
    return {std::move(a), std::move(trace)};
}

/// The line subsets of A along S as a rounding family; degree is |S|.
inline RoundingInstance line_rounding_instance(const RatVec& h, const LineSystem& sys) {
    RoundingInstance inst;
    inst.targets = h;
    for (const auto& line : sys.lines) inst.sets.push_back(line.point_indices);
    return inst;
}

/// Rounds h to the integer grid spanning its value range: each value moves to
/// its floor or ceiling and every line sum moves by at most k-1.
inline RatVec round_to_integers(const RatVec& h, const LatticeDomain& A,
                                const std::vector<Direction>& S) {
    LineSystem sys = enumerate_lines(A, S);
    Rational lo = h.front(), hi = h.front();
    for (const auto& v : h) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    RatVec levels;
    for (Int z = floor_int(lo); z <= ceil_int(hi); ++z) levels.push_back(Rational(z));
    auto [a, trace] = beck_fiala_round(line_rounding_instance(h, sys), GreyGrid(std::move(levels)));
    return a;
}

inline RatVec clamp_to_grid_range(RatVec h, const GreyGrid& grid) {
    for (auto& v : h) {
        if (v < grid.min()) v = grid.min();
        if (v > grid.max()) v = grid.max();
    }
    return h;
}

/// Rounds h (clamped into [z_1, z_m] first) to grid levels; every value moves
/// by at most z and every line sum by at most (k-1)z relative to the clamped
/// input.
inline RatVec round_to_grid(const RatVec& h, const LatticeDomain& A, const std::vector<Direction>& S,
                            const GreyGrid& grid) {
    LineSystem sys = enumerate_lines(A, S);
    RatVec clamped = clamp_to_grid_range(h, grid);
    auto [a, trace] = beck_fiala_round(line_rounding_instance(clamped, sys), grid);
    return a;
}

namespace detail {

/// Plain Edmonds-Karp max-flow on small integer networks.
class MaxFlow {
public:
    explicit MaxFlow(std::size_t n) : head_(n) {}

    void add_edge(std::size_t u, std::size_t v, long long cap) {
        head_[u].push_back(edges_.size());
        edges_.push_back({v, cap});
        head_[v].push_back(edges_.size());
        edges_.push_back({u, 0});
    }

    long long run(std::size_t src, std::size_t dst) {
        long long total = 0;
        while (true) {
            std::vector<std::size_t> prev_edge(head_.size(), SIZE_MAX);
            std::vector<bool> seen(head_.size(), false);
            std::queue<std::size_t> q;
            q.push(src);
            seen[src] = true;
            while (!q.empty() && !seen[dst]) {
                std::size_t u = q.front();
                q.pop();
                for (auto ei : head_[u]) {
                    const auto& e = edges_[ei];
                    if (e.cap > 0 && !seen[e.to]) {
                        seen[e.to] = true;
                        prev_edge[e.to] = ei;
                        q.push(e.to);
                    }
                }
            }
            if (!seen[dst]) break;
            long long aug = LLONG_MAX;
            for (std::size_t v = dst; v != src;) {
                const auto& e = edges_[prev_edge[v]];
                aug = std::min(aug, e.cap);
                v = edges_[prev_edge[v] ^ 1].to;
            }
            for (std::size_t v = dst; v != src;) {
                edges_[prev_edge[v]].cap -= aug;
                edges_[prev_edge[v] ^ 1].cap += aug;
                v = edges_[prev_edge[v] ^ 1].to;
            }
            total += aug;
        }
        return total;
    }

    long long flow_on(std::size_t edge_index) const { return edges_[2 * edge_index + 1].cap; }

private:
    struct Edge {
        std::size_t to;
        long long cap;
    };
    std::vector<std::vector<std::size_t>> head_;
    std::vector<Edge> edges_;
};

}  // namespace detail

/// Integer rounding of a real matrix with every entry, row sum, column sum and
/// the grand total moved by strictly less than 1. Splits off the integer part
/// and rounds the fractional part to 0/1 by a feasible integral circulation
/// whose node demands are the floor/ceil brackets of the fractional sums.
inline RationalMatrix matrix_round(const RationalMatrix& h) {
    const std::size_t p = h.rows(), q = h.cols();
    RationalMatrix frac(p, q);
    RationalMatrix out(p, q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Int fl = floor_int(h(i, j));
            out(i, j) = Rational(fl);
            frac(i, j) = h(i, j) - Rational(fl);
        }
    RatVec row_sum(p, Rational(0)), col_sum(q, Rational(0));
    Rational total = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            row_sum[i] += frac(i, j);
            col_sum[j] += frac(i, j);
            total += frac(i, j);
        }

    // Circulation with lower bounds: source -> row_i -> col_j -> sink -> source,
    // reduced to plain max-flow via per-node excesses.
    const std::size_t src = 0, snk = 1, rows0 = 2, cols0 = 2 + p;
    const std::size_t ss = cols0 + q, st = ss + 1, n = st + 1;
    detail::MaxFlow net(n);
    std::vector<long long> excess(n, 0);
    auto bounded = [&](std::size_t u, std::size_t v, long long lo, long long hi) {
        net.add_edge(u, v, hi - lo);
        excess[v] += lo;
        excess[u] -= lo;
    };
    struct CellEdge {
        std::size_t i, j, edge;
    };
    std::vector<CellEdge> cells;
    std::size_t edge_count = 0;
    for (std::size_t i = 0; i < p; ++i) {
        bounded(src, rows0 + i, (long long)floor_int(row_sum[i]), (long long)ceil_int(row_sum[i]));
        ++edge_count;
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            if (frac(i, j) == 0) continue;
            cells.push_back({i, j, edge_count});
            bounded(rows0 + i, cols0 + j, 0, 1);
            ++edge_count;
        }
    for (std::size_t j = 0; j < q; ++j) {
        bounded(cols0 + j, snk, (long long)floor_int(col_sum[j]), (long long)ceil_int(col_sum[j]));
        ++edge_count;
    }
    bounded(snk, src, (long long)floor_int(total), (long long)ceil_int(total));
    ++edge_count;

    long long needed = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (v == ss || v == st) continue;
        if (excess[v] > 0) {
            net.add_edge(ss, v, excess[v]);
            needed += excess[v];
            ++edge_count;
        } else if (excess[v] < 0) {
            net.add_edge(v, st, -excess[v]);
            ++edge_count;
        }
    }
    if (net.run(ss, st) != needed) throw InternalError("matrix rounding circulation infeasible");

    for (const auto& c : cells)
        if (net.flow_on(c.edge) == 1) out(c.i, c.j) += 1;
    return out;
}

/// Extends h on A by zero onto a covering block domain. Rounding the extension
/// restricts to a rounding of h with identical guarantees.
inline RatVec embed_domain(const RatVec& h, const LatticeDomain& A, const LatticeDomain& block) {
    if (block.dim() != A.dim()) throw DimensionMismatch("block dimension mismatch");
    for (const auto& pt : A.points())
        if (!block.contains(pt)) throw NotCovering("block does not cover the domain");
    RatVec out(block.size(), Rational(0));
    for (std::size_t i = 0; i < A.size(); ++i) out[block.index_of(A.point(i))] = h[i];
    return out;
}

/// Reconstruction followed by clamping and grey-grid rounding, with both
/// stages' deviations reported.
struct RoundedReconstruction {
    Reconstruction recon;
    RatVec clamped;        // f0 clamped into [z_1, z_m]
    RatVec rounded;        // grid-valued output
    RatVec line_deviation; // |line sums of rounded - line sums of clamped|
    Rational budget;       // (k-1) z
};

inline RoundedReconstruction round_reconstruction(const LatticeDomain& A,
                                                  const std::vector<Direction>& S,
                                                  const RatVec& measured, const GreyGrid& grid) {
    Reconstruction rec = reconstruct(A, S, measured);
    RatVec clamped = clamp_to_grid_range(rec.f0, grid);
    auto [rounded, trace] = beck_fiala_round(line_rounding_instance(clamped, rec.system), grid);
    RatVec dev(rec.system.line_count());
    RatVec ls_r = line_sums(rounded, rec.system), ls_c = line_sums(clamped, rec.system);
    for (std::size_t t = 0; t < dev.size(); ++t) dev[t] = abs(ls_r[t] - ls_c[t]);
    Rational budget = Rational(S.size() - 1) * grid.gap();
    return RoundedReconstruction{std::move(rec), std::move(clamped), std::move(rounded),
                                 std::move(dev), std::move(budget)};
}

}  // namespace ltomo
