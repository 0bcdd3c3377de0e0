#pragma once

// Exact linear algebra over a field Scalar (CycScalar, Rational).
// Dense routines take any Eigen expression; sparse routines work on sorted
// (column, value) rows. Zero tests go through the free function is_zero().

#include <Eigen/Core>
#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "trihopf/errors.hpp"

namespace trihopf {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct RowEchelon {
    DenseMatrix<Scalar> reduced;
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <typename Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> m = input;
    RowEchelon<Scalar> out;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = row;
        while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index k = col; k < m.cols(); ++k) m(row, k) = m(row, k) * inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const Scalar f = m(r, col);
            for (Eigen::Index k = col; k < m.cols(); ++k)
                if (!is_zero(m(row, k))) m(r, k) -= f * m(row, k);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

/// Rank by fraction-free (Bareiss) elimination: every division is exact and
/// entries stay in the ring generated by the input entries.
template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> m = input;
    Scalar prev(1);
    Eigen::Index k = 0;
    for (Eigen::Index col = 0; col < m.cols() && k < m.rows(); ++col) {
        Eigen::Index piv = k;
        while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != k) m.row(piv).swap(m.row(k));
        for (Eigen::Index i = k + 1; i < m.rows(); ++i) {
            for (Eigen::Index j = col + 1; j < m.cols(); ++j)
                m(i, j) = (m(k, col) * m(i, j) - m(i, col) * m(k, j)) / prev;
            m(i, col) = Scalar(0);
        }
        prev = m(k, col);
        ++k;
    }
    return k;
}

/// Determinant by Bareiss elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    if (input.rows() != input.cols()) throw DomainError("determinant of a non-square matrix");
    DenseMatrix<Scalar> m = input;
    const Eigen::Index n = m.rows();
    Scalar prev(1);
    bool negate = false;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        while (piv < n && is_zero(m(piv, k))) ++piv;
        if (piv == n) return Scalar(0);
        if (piv != k) {
            m.row(piv).swap(m.row(k));
            negate = !negate;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = Scalar(0);
        }
        prev = m(k, k);
    }
    if (n == 0) return Scalar(1);
    return negate ? Scalar(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

/// Basis of the right null space, one vector per column.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    const Eigen::Index nullity = m.cols() - static_cast<Eigen::Index>(ech.pivots.size());
    DenseMatrix<Scalar> basis = DenseMatrix<Scalar>::Zero(m.cols(), nullity);
    Eigen::Index out = 0;
    for (Eigen::Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis(free, out) = Scalar(1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r)
            basis(ech.pivots[r], out) = -ech.reduced(static_cast<Eigen::Index>(r), free);
        ++out;
    }
    return basis;
}

/// The linearly independent columns of m (first occurrence wins).
template <typename Derived>
DenseMatrix<typename Derived::Scalar> column_basis(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto ech = rref(m);
    DenseMatrix<Scalar> out(m.rows(), static_cast<Eigen::Index>(ech.pivots.size()));
    for (std::size_t k = 0; k < ech.pivots.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(ech.pivots[k]);
    return out;
}

/// Some solution X of A X = B, or nullopt when inconsistent.
template <typename DA, typename DB>
std::optional<DenseMatrix<typename DA::Scalar>> solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    using Scalar = typename DA::Scalar;
    if (a.rows() != b.rows()) throw DomainError("solve: row count mismatch");
    DenseMatrix<Scalar> aug(a.rows(), a.cols() + b.cols());
    aug << a, b;
    const auto ech = rref(aug);
    DenseMatrix<Scalar> x = DenseMatrix<Scalar>::Zero(a.cols(), b.cols());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        if (ech.pivots[r] >= a.cols()) return std::nullopt;
        x.row(ech.pivots[r]) = ech.reduced.block(static_cast<Eigen::Index>(r), a.cols(), 1, b.cols());
    }
    return x;
}

template <typename Derived>
std::optional<DenseMatrix<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
    if (rank(a) != a.rows()) return std::nullopt;
    return solve(a, DenseMatrix<Scalar>::Identity(a.rows(), a.cols()));
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <typename DA, typename DB>
bool exactly_equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Sparse elimination

template <typename Scalar>
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

/// Incremental row echelon form over sparse rows. Pivot rows are normalized
/// to a leading 1 and hold only columns at or right of their pivot, so each
/// insertion costs one inversion at most.
template <typename Scalar>
class SparseEchelon {
public:
    explicit SparseEchelon(std::size_t ncols)
        : ncols_(ncols), pivots_(ncols), acc_(ncols), queued_(ncols, 0) {}

    std::size_t ncols() const noexcept { return ncols_; }
    std::size_t rank() const noexcept { return rank_; }
    bool has_pivot(std::size_t col) const { return pivots_[col].has_value(); }
    const SparseRow<Scalar>& pivot_row(std::size_t col) const { return *pivots_[col]; }

    /// Returns true when the row was independent of those inserted before.
    bool insert(const SparseRow<Scalar>& row) {
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;
        for (const auto& [c, v] : row) {
            if (c >= ncols_) throw DomainError("sparse row column out of range");
            if (is_zero(v)) continue;
            acc_[c] += v;
            if (!queued_[c]) {
                queued_[c] = 1;
                heap.push(c);
            }
        }
        while (!heap.empty()) {
            const std::size_t c = heap.top();
            heap.pop();
            queued_[c] = 0;
            if (is_zero(acc_[c])) continue;
            if (!pivots_[c]) {
                SparseRow<Scalar> fresh;
                const Scalar inv = Scalar(1) / acc_[c];
                fresh.emplace_back(c, Scalar(1));
                acc_[c] = Scalar(0);
                std::vector<std::size_t> rest;
                while (!heap.empty()) {
                    rest.push_back(heap.top());
                    heap.pop();
                }
                for (std::size_t j : rest) {
                    queued_[j] = 0;
                    if (!is_zero(acc_[j])) fresh.emplace_back(j, acc_[j] * inv);
                    acc_[j] = Scalar(0);
                }
                pivots_[c] = std::move(fresh);
                ++rank_;
                return true;
            }
            const Scalar f = acc_[c];
            acc_[c] = Scalar(0);
            for (const auto& [j, pv] : *pivots_[c]) {
                if (j == c) continue;
                acc_[j] -= f * pv;
                if (!queued_[j]) {
                    queued_[j] = 1;
                    heap.push(j);
                }
            }
        }
        return false;
    }

private:
    std::size_t ncols_;
    std::size_t rank_ = 0;
    std::vector<std::optional<SparseRow<Scalar>>> pivots_;
    std::vector<Scalar> acc_;
    std::vector<char> queued_;
};

/// Rank of a sparse matrix. The row/column incidence graph is split into
/// connected components first; each component is eliminated on its own.
template <typename Scalar>
std::size_t sparse_rank(const std::vector<SparseRow<Scalar>>& rows, std::size_t ncols) {
    std::vector<std::size_t> parent(ncols);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& row : rows) {
        std::size_t first = ncols;
        for (const auto& [c, v] : row) {
            if (c >= ncols) throw DomainError("sparse row column out of range");
            if (is_zero(v)) continue;
            if (first == ncols) {
                first = find(c);
            } else {
                parent[find(c)] = first;
            }
        }
    }
    std::vector<std::size_t> local(ncols), comp_size(ncols, 0), comp_index(ncols, ncols);
    std::size_t ncomp = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        const std::size_t r = find(c);
        if (comp_index[r] == ncols) comp_index[r] = ncomp++;
        local[c] = comp_size[comp_index[r]]++;
    }
    std::vector<std::vector<const SparseRow<Scalar>*>> buckets(ncomp);
    for (const auto& row : rows) {
        for (const auto& [c, v] : row) {
            if (is_zero(v)) continue;
            buckets[comp_index[find(c)]].push_back(&row);
            break;
        }
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < ncomp; ++k) {
        if (buckets[k].empty()) continue;
        SparseEchelon<Scalar> ech(comp_size[k]);
        for (const auto* row : buckets[k]) {
            SparseRow<Scalar> mapped;
            mapped.reserve(row->size());
            for (const auto& [c, v] : *row)
                if (!is_zero(v)) mapped.emplace_back(local[c], v);
            ech.insert(mapped);
            if (ech.rank() == ech.ncols()) break;
        }
        total += ech.rank();
    }
    return total;
}

template <typename Scalar>
struct SparseSolution {
    std::optional<std::vector<Scalar>> solution;  // nullopt when inconsistent
    std::size_t rank = 0;
    std::size_t ncols = 0;
    bool unique() const { return solution && rank == ncols; }
};

/// Solves M x = rhs where rows[i] is row i of M. Free variables are set to zero.
template <typename Scalar>
SparseSolution<Scalar> sparse_solve(const std::vector<SparseRow<Scalar>>& rows, const std::vector<Scalar>& rhs,
                                    std::size_t ncols) {
    if (rows.size() != rhs.size()) throw DomainError("sparse_solve: rhs length mismatch");
    SparseEchelon<Scalar> ech(ncols + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseRow<Scalar> aug = rows[i];
        if (!is_zero(rhs[i])) aug.emplace_back(ncols, rhs[i]);
        ech.insert(aug);
    }
    SparseSolution<Scalar> out;
    out.ncols = ncols;
    if (ech.has_pivot(ncols)) {
        out.rank = ech.rank() - 1;
        return out;
    }
    out.rank = ech.rank();
    std::vector<Scalar> x(ncols, Scalar(0));
    for (std::size_t c = ncols; c-- > 0;) {
        if (!ech.has_pivot(c)) continue;
        Scalar value(0);
        for (const auto& [j, v] : ech.pivot_row(c)) {
            if (j == c) continue;
            if (j == ncols)
                value += v;
            else if (!is_zero(x[j]))
                value -= v * x[j];
        }
        x[c] = value;
    }
    out.solution = std::move(x);
    return out;
}

}  // namespace trihopf
