#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/rational.hpp"

namespace ltomo {

/// A lattice point; comparison is lexicographic.
using Point = std::vector<std::int64_t>;

/// Primitive integer vector: nonzero, gcd 1, first nonzero entry positive.
struct Direction {
    Point coords;

    std::size_t dim() const { return coords.size(); }
    bool operator==(const Direction& o) const { return coords == o.coords; }
    bool operator<(const Direction& o) const { return coords < o.coords; }
};

inline Direction normalize_direction(const Point& raw) {
    std::int64_t g = 0;
    for (auto c : raw) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 0) throw ZeroDirection();
    Point out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / g;
    for (auto c : out) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& v : out) v = -v;
        break;
    }
    return Direction{std::move(out)};
}

inline const Point& minimal_corner(const std::vector<Point>& pts) {
    if (pts.empty()) throw EmptySet();
    return *std::min_element(pts.begin(), pts.end());
}

/// Finite subset of Z^n with points kept in lexicographic increasing order.
class LatticeDomain {
public:
    LatticeDomain(std::size_t dim, std::vector<Point> pts) : dim_(dim), points_(std::move(pts)) {
        if (points_.empty()) throw EmptySet();
        for (const auto& p : points_)
            if (p.size() != dim_) throw DimensionMismatch("point dimension does not match domain");
        std::sort(points_.begin(), points_.end());
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (points_[i] == points_[i - 1]) throw DuplicatePoint("duplicate domain point");
        for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const Point& point(std::size_t i) const { return points_[i]; }

    bool contains(const Point& p) const { return index_.count(p) != 0; }

    std::size_t index_of(const Point& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw EmptySet();
        return it->second;
    }

    Point box_min() const {
        Point lo = points_.front();
        for (const auto& p : points_)
            for (std::size_t j = 0; j < dim_; ++j) lo[j] = std::min(lo[j], p[j]);
        return lo;
    }

    Point box_max() const {
        Point hi = points_.front();
        for (const auto& p : points_)
            for (std::size_t j = 0; j < dim_; ++j) hi[j] = std::max(hi[j], p[j]);
        return hi;
    }

    bool operator==(const LatticeDomain& o) const { return dim_ == o.dim_ && points_ == o.points_; }

private:
    std::size_t dim_;
    std::vector<Point> points_;
    std::map<Point, std::size_t> index_;
};

namespace detail {

inline Int cross2(const Point& o, const Point& a, const Point& b) {
    return Int(a[0] - o[0]) * Int(b[1] - o[1]) - Int(a[1] - o[1]) * Int(b[0] - o[0]);
}

/// Convex hull in the plane, counterclockwise, no collinear hull points kept.
inline std::vector<Point> hull2d(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {  // lower chain
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (k >= lower && cross2(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

inline bool in_hull2d(const std::vector<Point>& hull, const Point& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return p == hull[0];
    if (hull.size() == 2) {
        // On the segment: collinear and within the bounding box.
        if (cross2(hull[0], hull[1], p) != 0) return false;
        for (int j = 0; j < 2; ++j) {
            auto lo = std::min(hull[0][j], hull[1][j]), hi = std::max(hull[0][j], hull[1][j]);
            if (p[j] < lo || p[j] > hi) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = hull[i];
        const Point& b = hull[(i + 1) % hull.size()];
        if (cross2(a, b, p) < 0) return false;
    }
    return true;
}

/// Exact affine-combination test: p = sum lambda_i q_i, lambda >= 0, sum = 1,
/// for one fixed subset of points. Solves the overdetermined system by
/// rational elimination.
inline bool in_simplex(const std::vector<const Point*>& q, const Point& p) {
    const std::size_t n = p.size(), r = q.size();
    // Rows: n coordinate equations plus the affine one; columns: lambdas | rhs.
    std::vector<RatVec> m(n + 1, RatVec(r + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) m[i][j] = (*q[j])[i];
        m[i][r] = p[i];
    }
    for (std::size_t j = 0; j < r; ++j) m[n][j] = 1;
    m[n][r] = 1;

    std::vector<std::size_t> pivot_row(r, SIZE_MAX);
    std::size_t row = 0;
    for (std::size_t col = 0; col < r && row <= n; ++col) {
        std::size_t pr = SIZE_MAX;
        for (std::size_t i = row; i <= n; ++i)
            if (m[i][col] != 0) { pr = i; break; }
        if (pr == SIZE_MAX) continue;
        std::swap(m[row], m[pr]);
        Rational inv = m[row][col];
        for (auto& v : m[row]) v /= inv;
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t jj = col; jj <= r; ++jj) m[i][jj] -= f * m[row][jj];
        }
        pivot_row[col] = row;
        ++row;
    }
    // Inconsistent system: nonzero rhs in a zero row.
    for (std::size_t i = row; i <= n; ++i)
        if (m[i][r] != 0) return false;
    // Free lambdas take value 0; check nonnegativity of the basic solution.
    for (std::size_t col = 0; col < r; ++col)
        if (pivot_row[col] != SIZE_MAX && m[pivot_row[col]][r] < 0) return false;
    return true;
}

/// Membership in conv(points) by Caratheodory: p lies in the hull iff it lies
/// in the hull of some subset of at most n+1 points.
inline bool in_hull_general(const std::vector<Point>& pts, const Point& p) {
    const std::size_t n = p.size();
    const std::size_t s = pts.size();
    const std::size_t cap = std::min<std::size_t>(n + 1, s);
    std::vector<const Point*> chosen;
    std::vector<std::size_t> idx;
    // Iterative subset enumeration over sizes 1..cap.
    for (std::size_t sz = 1; sz <= cap; ++sz) {
        idx.assign(sz, 0);
        for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
        if (sz > s) break;
        while (true) {
            chosen.clear();
            for (auto i : idx) chosen.push_back(&pts[i]);
            if (in_simplex(chosen, p)) return true;
            std::size_t j = sz;
            while (j > 0 && idx[j - 1] == s - sz + (j - 1)) --j;
            if (j == 0) break;
            ++idx[j - 1];
            for (std::size_t i = j; i < sz; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return false;
}

}  // namespace detail

/// True iff p lies in the closed convex hull of the domain's points.
inline bool hull_contains(const LatticeDomain& A, const Point& p) {
    if (p.size() != A.dim()) throw DimensionMismatch("point dimension does not match domain");
    if (A.dim() == 2) return detail::in_hull2d(detail::hull2d(A.points()), p);
    return detail::in_hull_general(A.points(), p);
}

/// True iff every lattice point of the closed convex hull of A belongs to A.
inline bool is_convex(const LatticeDomain& A) {
    Point lo = A.box_min(), hi = A.box_max();
    Point p = lo;
    const std::size_t n = A.dim();
    while (true) {
        if (!A.contains(p) && hull_contains(A, p)) return false;
        std::size_t j = n;
        while (j > 0) {
            if (p[j - 1] < hi[j - 1]) { ++p[j - 1]; break; }
            p[j - 1] = lo[j - 1];
            --j;
        }
        if (j == 0) break;
    }
    return true;
}

/// All lattice points of the closed convex hull of A (the lattice-convex
/// closure); always yields a convex domain.
inline LatticeDomain lattice_hull_closure(const LatticeDomain& A) {
    Point lo = A.box_min(), hi = A.box_max();
    std::vector<Point> out;
    Point p = lo;
    const std::size_t n = A.dim();
    while (true) {
        if (A.contains(p) || hull_contains(A, p)) out.push_back(p);
        std::size_t j = n;
        while (j > 0) {
            if (p[j - 1] < hi[j - 1]) { ++p[j - 1]; break; }
            p[j - 1] = lo[j - 1];
            --j;
        }
        if (j == 0) break;
    }
    return LatticeDomain(n, std::move(out));
}

}  // namespace ltomo
