#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/linesum.hpp"
#include "ltomo/matrix.hpp"

namespace ltomo {

/// Greedy scan of columns in index order; a column joins iff independent of
/// those already chosen. Returns (B1, chosen indices), |indices| = rank(B).
inline std::pair<RationalMatrix, std::vector<std::size_t>> select_basis_columns(const RationalMatrix& B) {
    IncrementalBasis basis(B.rows());
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < B.cols(); ++j)
        if (basis.try_add(B.col(j))) idx.push_back(j);
    return {B.select_cols(idx), idx};
}

/// Greedy scan of rows in index order. Returns (B2, chosen indices); the row
/// selector C2 is implicit in the index list.
inline std::pair<RationalMatrix, std::vector<std::size_t>> select_basis_rows(const RationalMatrix& B) {
    IncrementalBasis basis(B.cols());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < B.rows(); ++i)
        if (basis.try_add(B.row(i))) idx.push_back(i);
    return {B.select_rows(idx), idx};
}

/// Orthogonal projection of b onto the range of B: solves (B1^T B1) y = B1^T b
/// and returns B1 y. The residual b - b* is orthogonal to every column of B.
inline RatVec project_to_range(const RationalMatrix& B1, const RatVec& b) {
    RationalMatrix Bt = B1.transpose();
    RatVec y = solve_square(Bt * B1, Bt * b);
    return B1 * y;
}

/// Shortest f with B f = b_star: solves (B2 B2^T) y = C2 b_star and returns
/// B2^T y, which lies in the row space of B.
inline RatVec shortest_preimage(const RationalMatrix& B, const RationalMatrix& B2,
                                const std::vector<std::size_t>& row_idx, const RatVec& b_star) {
    RatVec rhs(row_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i) rhs[i] = b_star[row_idx[i]];
    RationalMatrix B2t = B2.transpose();
    RatVec y = solve_square(B2 * B2t, rhs);
    RatVec f0 = B2t * y;
    if (B * f0 != b_star) throw InconsistentTarget();
    return f0;
}

/// Exact least-squares reconstruction: the consistent line-sum vector b*
/// nearest to b, and the shortest function f0 attaining it.
struct Reconstruction {
    LineSystem system;
    RatVec b_star;  // length t, canonical line order
    RatVec f0;      // length s, lexicographic point order
    std::size_t rank;
    std::vector<std::size_t> basis_columns;
    std::vector<std::size_t> basis_rows;
};

inline Reconstruction reconstruct(const LatticeDomain& A, const std::vector<Direction>& S,
                                  const RatVec& measured) {
    LineSystem sys = enumerate_lines(A, S);
    if (measured.size() != sys.line_count())
        throw MissingLine("expected " + std::to_string(sys.line_count()) + " measured sums, got " +
                          std::to_string(measured.size()));
    auto [B1, col_idx] = select_basis_columns(sys.incidence);
    auto [B2, row_idx] = select_basis_rows(sys.incidence);
    RatVec b_star = project_to_range(B1, measured);
    RatVec f0 = shortest_preimage(sys.incidence, B2, row_idx, b_star);
    return Reconstruction{std::move(sys), std::move(b_star), std::move(f0),
                          col_idx.size(), std::move(col_idx), std::move(row_idx)};
}

inline Reconstruction reconstruct(const LatticeDomain& A, const std::vector<Direction>& S,
                                  const std::vector<KeyedSum>& measured) {
    LineSystem sys = enumerate_lines(A, S);
    return reconstruct(A, S, resolve_keyed_sums(sys, measured));
}

}  // namespace ltomo
