#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ltomo/errors.hpp"
#include "ltomo/rational.hpp"

namespace ltomo {

/// Dense matrix of exact rationals. Nothing in here ever rounds.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatVec row(std::size_t i) const {
        return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    RatVec col(std::size_t j) const {
        RatVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    RationalMatrix select_rows(const std::vector<std::size_t>& idx) const {
        RationalMatrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
        return m;
    }

    RationalMatrix select_cols(const std::vector<std::size_t>& idx) const {
        RationalMatrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

inline RatVec operator*(const RationalMatrix& m, const RatVec& v) {
    if (v.size() != m.cols()) throw DimensionMismatch("matrix-vector size mismatch");
    RatVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix-matrix size mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rational norm_sq(const RatVec& v) { return dot(v, v); }

inline bool is_zero(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

namespace detail {

// Pivot choice: among nonzero candidates prefer the one with the smallest
// numerator*denominator magnitude to limit coefficient growth.
inline std::size_t pick_pivot(const RationalMatrix& m, std::size_t col, std::size_t from_row) {
    std::size_t best = SIZE_MAX;
    Int best_size = 0;
    for (std::size_t i = from_row; i < m.rows(); ++i) {
        const Rational& v = m(i, col);
        if (v == 0) continue;
        Int size = boost::multiprecision::abs(numerator(v)) * denominator(v);
        if (best == SIZE_MAX || size < best_size) {
            best = i;
            best_size = size;
        }
    }
    return best;
}

}  // namespace detail

/// Solves M x = rhs for square nonsingular M by rational Gaussian elimination.
inline RatVec solve_square(RationalMatrix m, RatVec rhs) {
    const std::size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n) throw DimensionMismatch("solve_square needs a square system");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = detail::pick_pivot(m, col, col);
        if (p == SIZE_MAX) throw SingularSystem();
        if (p != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m(p, j), m(col, j));
            std::swap(rhs[p], rhs[col]);
        }
        Rational piv = m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / piv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
            rhs[i] -= f * rhs[col];
        }
    }
    RatVec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
        x[i] = acc / m(i, i);
    }
    return x;
}

/// Incrementally tests vectors for linear independence against those already
/// accepted. Backs the greedy basis scans.
class IncrementalBasis {
public:
    explicit IncrementalBasis(std::size_t dim) : dim_(dim) {}

    /// Accepts v iff it is independent of the accepted set.
    bool try_add(RatVec v) {
        if (v.size() != dim_) throw DimensionMismatch("vector dimension mismatch");
        for (std::size_t b = 0; b < reduced_.size(); ++b) {
            const Rational& lead = v[pivots_[b]];
            if (lead == 0) continue;
            Rational f = lead / reduced_[b][pivots_[b]];
            for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * reduced_[b][j];
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            if (v[j] != 0) {
                pivots_.push_back(j);
                reduced_.push_back(std::move(v));
                return true;
            }
        }
        return false;
    }

    std::size_t size() const { return reduced_.size(); }

private:
    std::size_t dim_;
    std::vector<RatVec> reduced_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const RationalMatrix& m) {
    IncrementalBasis basis(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) basis.try_add(m.row(i));
    return basis.size();
}

/// Basis of {x : M x = 0} via reduced row echelon form; one vector per free
/// column, deterministic.
inline std::vector<RatVec> nullspace(RationalMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = detail::pick_pivot(m, col, r);
        if (p == SIZE_MAX) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        Rational piv = m(r, col);
        for (std::size_t j = 0; j < cols; ++j) m(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(cols);
        v[free_col] = 1;
        for (std::size_t b = 0; b < pivot_col.size(); ++b) v[pivot_col[b]] = -m(b, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ltomo
