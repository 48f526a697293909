#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/lattice.hpp"
#include "ltomo/matrix.hpp"

namespace ltomo {

/// One maximal collinear subset Y of the domain.
struct Line {
    std::size_t direction_index;             // position in S
    std::vector<std::size_t> point_indices;  // ascending domain indices
    Point key;                               // lexicographically smallest point on the line
};

/// All lines along S meeting A, plus the t x s incidence matrix B.
struct LineSystem {
    LatticeDomain domain;
    std::vector<Direction> directions;
    std::vector<Line> lines;
    RationalMatrix incidence;  // rows = lines, cols = points of A

    std::size_t line_count() const { return lines.size(); }

    /// Index of the line of direction `dir_index` through `p`.
    std::size_t find_line(std::size_t dir_index, const Point& p) const {
        if (dir_index >= directions.size()) throw UnknownLine("direction index out of range");
        if (!domain.contains(p)) throw UnknownLine("point not in domain");
        std::size_t pi = domain.index_of(p);
        for (std::size_t t = 0; t < lines.size(); ++t) {
            if (lines[t].direction_index != dir_index) continue;
            const auto& idx = lines[t].point_indices;
            if (std::binary_search(idx.begin(), idx.end(), pi)) return t;
        }
        throw UnknownLine("no line of this direction through the point");
    }
};

inline void check_directions(const LatticeDomain& A, const std::vector<Direction>& S) {
    if (S.empty()) throw EmptySet();
    for (const auto& d : S) {
        if (d.dim() != A.dim()) throw DimensionMismatch("direction dimension does not match domain");
        if (normalize_direction(d.coords).coords != d.coords)
            throw ParseError("direction is not normalized");
    }
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (S[i] == S[j]) throw DuplicateDirection();
}

namespace detail {

// a and b are on one line of direction d iff b - a is an integer multiple of d.
inline bool collinear(const Point& a, const Point& b, const Direction& d) {
    std::size_t j0 = 0;
    while (d.coords[j0] == 0) ++j0;
    std::int64_t diff = b[j0] - a[j0];
    if (diff % d.coords[j0] != 0) return false;
    std::int64_t t = diff / d.coords[j0];
    for (std::size_t j = 0; j < d.coords.size(); ++j)
        if (b[j] - a[j] != t * d.coords[j]) return false;
    return true;
}

}  // namespace detail

/// Partitions A into maximal collinear classes per direction, in S order;
/// within a direction, lines are ordered by their lexicographically smallest
/// point. Deterministic and independent of input point order.
inline LineSystem enumerate_lines(const LatticeDomain& A, const std::vector<Direction>& S) {
    check_directions(A, S);
    const std::size_t s = A.size();
    std::vector<Line> lines;
    for (std::size_t di = 0; di < S.size(); ++di) {
        std::vector<bool> used(s, false);
        for (std::size_t i = 0; i < s; ++i) {
            if (used[i]) continue;
            Line line;
            line.direction_index = di;
            line.key = A.point(i);
            for (std::size_t j = i; j < s; ++j) {
                if (!used[j] && detail::collinear(A.point(i), A.point(j), S[di])) {
                    used[j] = true;
                    line.point_indices.push_back(j);
                }
            }
            lines.push_back(std::move(line));
        }
    }
    RationalMatrix B(lines.size(), s);
    for (std::size_t t = 0; t < lines.size(); ++t)
        for (auto j : lines[t].point_indices) B(t, j) = 1;
    return LineSystem{A, S, std::move(lines), std::move(B)};
}

/// Line sums B * f in the system's canonical line order.
inline RatVec line_sums(const RatVec& f, const LineSystem& sys) {
    if (f.size() != sys.domain.size()) throw DimensionMismatch("function size does not match domain");
    return sys.incidence * f;
}

/// A measured sum addressed by direction index and any point on its line.
struct KeyedSum {
    std::size_t dir_index;
    Point point;
    Rational sum;
};

/// Resolves keyed measurements to the canonical line order. Every line must
/// be measured exactly once.
inline RatVec resolve_keyed_sums(const LineSystem& sys, const std::vector<KeyedSum>& sums) {
    RatVec b(sys.line_count());
    std::vector<bool> seen(sys.line_count(), false);
    for (const auto& ks : sums) {
        std::size_t t = sys.find_line(ks.dir_index, ks.point);
        if (seen[t]) throw UnknownLine("line measured twice");
        seen[t] = true;
        b[t] = ks.sum;
    }
    for (std::size_t t = 0; t < sys.line_count(); ++t)
        if (!seen[t]) throw MissingLine("no measurement for line " + std::to_string(t));
    return b;
}

}  // namespace ltomo
