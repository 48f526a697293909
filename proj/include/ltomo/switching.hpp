#pragma once

#include <map>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/lattice.hpp"
#include "ltomo/linesum.hpp"

namespace ltomo {

/// Coefficient function m_u of a switching polynomial: finitely supported
/// signed integer weights with zero line sums along S. The weight at the
/// minimal corner of the support is +1 or -1.
struct SignedSupport {
    std::map<Point, Int> weights;  // keys in lexicographic order
    Point anchor;                  // translation u relative to the base support

    const Point& minimal_corner() const {
        if (weights.empty()) throw EmptySet();
        return weights.begin()->first;
    }

    Int corner_weight() const { return weights.begin()->second; }
};

/// Expands F(x) = prod_i (x^{d_i} - 1) * (monomial clearing negative
/// exponents), anchored at the origin.
inline SignedSupport base_switching_support(const std::vector<Direction>& S) {
    if (S.empty()) throw EmptySet();
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (S[i] == S[j]) throw DuplicateDirection();
    const std::size_t n = S.front().dim();
    std::map<Point, Int> poly{{Point(n, 0), Int(1)}};
    for (const auto& d : S) {
        if (d.dim() != n) throw DimensionMismatch("direction dimensions disagree");
        // x^d - 1 times prod_{d_j<0} x_j^{-d_j} has exactly the two terms
        // +x^{max(d,0)} and -x^{max(-d,0)}.
        Point pos(n), neg(n);
        for (std::size_t j = 0; j < n; ++j) {
            pos[j] = d.coords[j] > 0 ? d.coords[j] : 0;
            neg[j] = d.coords[j] < 0 ? -d.coords[j] : 0;
        }
        std::map<Point, Int> next;
        for (const auto& [e, w] : poly) {
            Point a = e, b = e;
            for (std::size_t j = 0; j < n; ++j) {
                a[j] += pos[j];
                b[j] += neg[j];
            }
            next[a] += w;
            next[b] -= w;
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second == 0 ? next.erase(it) : std::next(it);
        poly = std::move(next);
    }
    return SignedSupport{std::move(poly), Point(n, 0)};
}

inline SignedSupport translate_support(const SignedSupport& base, const Point& u) {
    if (!base.weights.empty() && base.weights.begin()->first.size() != u.size())
        throw DimensionMismatch("translation dimension mismatch");
    SignedSupport out;
    for (const auto& [p, w] : base.weights) {
        Point q = p;
        for (std::size_t j = 0; j < u.size(); ++j) q[j] += u[j];
        out.weights.emplace(std::move(q), w);
    }
    out.anchor = base.anchor;
    for (std::size_t j = 0; j < u.size(); ++j) out.anchor[j] += u[j];
    return out;
}

/// All translates D_u contained in A, in lexicographic order of the anchor u.
inline std::vector<SignedSupport> enumerate_components(const LatticeDomain& A,
                                                       const std::vector<Direction>& S) {
    SignedSupport base = base_switching_support(S);
    const std::size_t n = A.dim();
    Point lo = base.weights.begin()->first, hi = lo;
    for (const auto& [p, w] : base.weights)
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    Point alo = A.box_min(), ahi = A.box_max();
    Point ulo(n), uhi(n);
    for (std::size_t j = 0; j < n; ++j) {
        ulo[j] = alo[j] - lo[j];
        uhi[j] = ahi[j] - hi[j];
        if (ulo[j] > uhi[j]) return {};
    }
    std::vector<SignedSupport> out;
    Point u = ulo;
    while (true) {
        SignedSupport cand = translate_support(base, u);
        bool inside = true;
        for (const auto& [p, w] : cand.weights)
            if (!A.contains(p)) {
                inside = false;
                break;
            }
        if (inside) out.push_back(std::move(cand));
        std::size_t j = n;
        while (j > 0) {
            if (u[j - 1] < uhi[j - 1]) { ++u[j - 1]; break; }
            u[j - 1] = ulo[j - 1];
            --j;
        }
        if (j == 0) break;
    }
    return out;
}

/// Coefficients of a zero-line-sum function on the components inside A.
struct Decomposition {
    std::map<Point, Rational> coefficients;  // anchor u -> c_u
};

namespace detail {

// Exact solve of sum_u c_u m_u = f when the peeling-order shortcut cannot be
// used: pick independent rows of the component matrix and solve them.
inline std::vector<Rational> solve_component_system(const LatticeDomain& A,
                                                    const std::vector<SignedSupport>& comps,
                                                    const RatVec& f) {
    const std::size_t s = A.size(), m = comps.size();
    RationalMatrix M(s, m);
    for (std::size_t c = 0; c < m; ++c)
        for (const auto& [p, w] : comps[c].weights) M(A.index_of(p), c) = Rational(w);
    std::vector<std::size_t> rows;
    IncrementalBasis basis(m);
    for (std::size_t i = 0; i < s && rows.size() < m; ++i)
        if (basis.try_add(M.row(i))) rows.push_back(i);
    if (rows.size() < m) throw InternalError("component vectors not independent");
    RationalMatrix sq = M.select_rows(rows);
    RatVec rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = f[rows[i]];
    RatVec c = solve_square(sq, rhs);
    // The remaining rows must agree, else f is outside the span.
    RatVec recon = M * c;
    for (std::size_t i = 0; i < s; ++i)
        if (recon[i] != f[i]) throw ResidualNonzero();
    return c;
}

}  // namespace detail

/// Writes a zero-line-sum function uniquely as sum_u c_u m_u over the
/// components contained in the convex domain A.
///
/// Peels anchors in lexicographic order: the minimal corner of the first
/// unresolved component is not contained in any later component's support,
/// so its coefficient can be read off directly.
inline Decomposition decompose_zero_sum(const RatVec& f, const LatticeDomain& A,
                                        const std::vector<Direction>& S) {
    if (!is_convex(A)) throw NotConvex();
    LineSystem sys = enumerate_lines(A, S);
    if (!is_zero(line_sums(f, sys))) throw NonzeroLineSums();
    std::vector<SignedSupport> comps = enumerate_components(A, S);

    RatVec residual = f;
    Decomposition dec;
    bool order_ok = true;
    for (std::size_t c = 0; c < comps.size() && order_ok; ++c) {
        const Point& corner = comps[c].minimal_corner();
        for (std::size_t later = c + 1; later < comps.size(); ++later)
            if (comps[later].weights.count(corner)) {
                order_ok = false;
                break;
            }
        if (!order_ok) break;
        Rational coeff = residual[A.index_of(corner)] / Rational(comps[c].corner_weight());
        dec.coefficients.emplace(comps[c].anchor, coeff);
        if (coeff != 0)
            for (const auto& [p, w] : comps[c].weights) residual[A.index_of(p)] -= coeff * Rational(w);
    }
    if (!order_ok) {
        // Fallback: solve the full system exactly.
        auto c = detail::solve_component_system(A, comps, f);
        dec.coefficients.clear();
        for (std::size_t i = 0; i < comps.size(); ++i) dec.coefficients.emplace(comps[i].anchor, c[i]);
        return dec;
    }
    if (!is_zero(residual)) throw ResidualNonzero();
    return dec;
}

/// The unique f with the same line sums along S as h and the prescribed
/// values at the minimal corners of the components contained in A. Integer h
/// with integer prescriptions yields an integer f.
inline RatVec complete_with_corner_values(const RatVec& h, const std::map<Point, Rational>& prescribed,
                                          const LatticeDomain& A, const std::vector<Direction>& S) {
    if (!is_convex(A)) throw NotConvex();
    std::vector<SignedSupport> comps = enumerate_components(A, S);
    if (prescribed.size() != comps.size()) throw WrongCornerSet("prescription count mismatch");
    for (const auto& comp : comps)
        if (!prescribed.count(comp.minimal_corner()))
            throw WrongCornerSet("missing prescription at a minimal corner");

    RatVec f = h;
    for (const auto& comp : comps) {
        const Point& corner = comp.minimal_corner();
        Rational c = (prescribed.at(corner) - f[A.index_of(corner)]) / Rational(comp.corner_weight());
        if (c != 0)
            for (const auto& [p, w] : comp.weights) f[A.index_of(p)] += c * Rational(w);
    }
    return f;
}

}  // namespace ltomo
