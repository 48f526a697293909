#pragma once

#include <set>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/linesum.hpp"
#include "ltomo/matrix.hpp"
#include "ltomo/switching.hpp"

namespace ltomo {

/// Solves the explicit linear system for the shortest best approximation on a
/// convex domain: one orthogonality equation per switching component inside A
/// and one stationarity equation per remaining point. The result equals the
/// least-squares f0.
inline RatVec assemble_and_solve(const LatticeDomain& A, const std::vector<Direction>& S,
                                 const RatVec& measured) {
    if (!is_convex(A)) throw NotConvex();
    LineSystem sys = enumerate_lines(A, S);
    if (measured.size() != sys.line_count())
        throw MissingLine("expected " + std::to_string(sys.line_count()) + " measured sums");
    const std::size_t s = A.size();
    std::vector<SignedSupport> comps = enumerate_components(A, S);

    std::set<Point> corners;
    for (const auto& c : comps) corners.insert(c.minimal_corner());

    RationalMatrix M(s, s);
    RatVec rhs(s);
    std::size_t row = 0;
    // Orthogonality to each component: sum_v f0(v) m_u(v) = 0.
    for (const auto& c : comps) {
        for (const auto& [p, w] : c.weights) M(row, A.index_of(p)) = Rational(w);
        rhs[row] = 0;
        ++row;
    }
    // Stationarity at each point outside the corner set:
    // sum over lines through u of the line sum of f0 equals the same sum of
    // the measurements.
    for (std::size_t i = 0; i < s; ++i) {
        if (corners.count(A.point(i))) continue;
        for (std::size_t t = 0; t < sys.line_count(); ++t) {
            if (sys.incidence(t, i) == 0) continue;
            for (auto j : sys.lines[t].point_indices) M(row, j) += 1;
            rhs[row] += measured[t];
        }
        ++row;
    }
    if (row != s) throw InternalError("equation count does not match |A|");
    return solve_square(M, rhs);
}

/// A p x q block with measured row and column sums.
struct RectangleInstance {
    std::size_t p;  // rows, y = 0..p-1
    std::size_t q;  // columns, x = 0..q-1
    RatVec row_sums;  // r_j, j = 0..p-1
    RatVec col_sums;  // c_i, i = 0..q-1

    Rational total() const {
        Rational s_r = 0, s_c = 0;
        for (const auto& r : row_sums) s_r += r;
        for (const auto& c : col_sums) s_c += c;
        return (Rational(p) * s_r + Rational(q) * s_c) / Rational(q + p);
    }

    /// Measurements in the canonical line order of S = {(1,0),(0,1)}:
    /// rows y = 0..p-1 first, then columns x = 0..q-1.
    RatVec measured_canonical() const {
        RatVec b = row_sums;
        b.insert(b.end(), col_sums.begin(), col_sums.end());
        return b;
    }

    /// Domain {(i,j) : 0 <= i < q, 0 <= j < p} in lexicographic order.
    LatticeDomain domain() const {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < p; ++j)
                pts.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
        return LatticeDomain(2, std::move(pts));
    }
};

/// Closed form f0(i,j) = c_i/p + r_j/q - T/(qp) on the block, with
/// T = (p s_r + q s_c)/(q + p). Returned in lexicographic point order.
inline RatVec rectangle_closed_form(const RectangleInstance& inst) {
    if (inst.p < 1 || inst.q < 1) throw DimensionMismatch("rectangle must be nonempty");
    if (inst.row_sums.size() != inst.p || inst.col_sums.size() != inst.q)
        throw DimensionMismatch("sum vector lengths disagree with p, q");
    Rational T = inst.total();
    RatVec f0;
    f0.reserve(inst.p * inst.q);
    for (std::size_t i = 0; i < inst.q; ++i)
        for (std::size_t j = 0; j < inst.p; ++j)
            f0.push_back(inst.col_sums[i] / Rational(inst.p) + inst.row_sums[j] / Rational(inst.q) -
                         T / Rational(inst.q * inst.p));
    return f0;
}

}  // namespace ltomo
