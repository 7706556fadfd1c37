#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cartansuper/sparse.hpp"

namespace cartansuper {

/// Incremental exact row echelonization.
///
/// Rows are inserted in the order given; a row's pivot is its first nonzero
/// column after reduction against the rows already held. Held rows stay in
/// semi-echelon form (distinct leading columns, leading coefficient 1) and
/// `rref()` back-substitutes to the reduced form on demand.
class Echelon {
public:
    explicit Echelon(std::size_t cols);

    /// Reduces `row` and keeps it if independent. Returns true when kept.
    bool insert(SparseVec row);
    /// Residual of `row` after elimination against held rows.
    [[nodiscard]] SparseVec reduce(SparseVec row) const;
    [[nodiscard]] bool in_span(const SparseVec& row) const { return reduce(row).empty(); }

    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    /// Pivot columns, ascending.
    [[nodiscard]] std::vector<std::size_t> pivots() const;
    /// Reduced row-echelon rows sorted by pivot.
    [[nodiscard]] std::vector<SparseVec> rref() const;
    [[nodiscard]] const std::vector<SparseVec>& rows() const noexcept { return rows_; }

private:
    std::size_t cols_;
    std::vector<SparseVec> rows_;
    std::vector<std::int32_t> pivot_row_;  // column -> row index or -1
};

/// Subspace of Q^ambient held as a reduced row-echelon basis.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient);  // zero subspace
    /// Span of arbitrary (possibly dependent) rows.
    Subspace(std::size_t ambient, const std::vector<SparseVec>& spanning);

    static Subspace full(std::size_t ambient);

    [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] const std::vector<SparseVec>& basis() const noexcept { return basis_; }
    [[nodiscard]] const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    [[nodiscard]] Matrix basis_matrix() const { return Matrix::from_rows(ambient_, basis_); }

    /// v minus its projection along pivot coordinates; zero iff v is a member.
    [[nodiscard]] SparseVec residual(const SparseVec& v) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVec> basis_;
    std::vector<std::size_t> pivots_;
};

[[nodiscard]] std::size_t rank(const Matrix& m);
/// {v : m v = 0}, dim = cols - rank.
[[nodiscard]] Subspace kernel(const Matrix& m);
/// Row space of m.
[[nodiscard]] Subspace row_space(const Matrix& m);
/// Column space of m (as a subspace of Q^rows).
[[nodiscard]] Subspace column_space(const Matrix& m);
/// Some x with m x = b, free variables set to zero; nullopt when infeasible.
[[nodiscard]] std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b);
[[nodiscard]] bool member(const Subspace& s, const SparseVec& v);
[[nodiscard]] Subspace intersect(const Subspace& a, const Subspace& b);
[[nodiscard]] Subspace sum(const Subspace& a, const Subspace& b);
/// a ⊆ b
[[nodiscard]] bool is_subspace_of(const Subspace& a, const Subspace& b);
/// Linear functionals vanishing on s, as rows (kernel of the basis matrix).
[[nodiscard]] Subspace annihilator(const Subspace& s);

/// Expresses vectors in a fixed linearly independent (not necessarily
/// echelon) basis.
class CoordinateSolver {
public:
    CoordinateSolver() = default;
    /// Throws StructureError if `basis` is dependent.
    CoordinateSolver(std::size_t ambient, const std::vector<SparseVec>& basis);

    /// Coefficients c with v = sum_i c_i basis_i, or nullopt if v is outside the span.
    [[nodiscard]] std::optional<SparseVec> coords(const SparseVec& v) const;
    [[nodiscard]] std::size_t size() const noexcept { return dim_; }

private:
    std::size_t ambient_ = 0;
    std::size_t dim_ = 0;
    bool unit_basis_ = false;
    std::vector<std::uint32_t> unit_index_;        // basis i is e_{unit_index_[i]}
    std::vector<std::int32_t> unit_lookup_;        // ambient index -> basis index or -1
    std::vector<SparseVec> rref_;                  // rows of the RREF of basis
    std::vector<std::size_t> pivots_;
    std::vector<SparseVec> transform_;             // rref_[k] = sum transform_[k]_i basis_i
    std::vector<std::int32_t> pivot_lookup_;       // ambient col -> rref row or -1
};

}  // namespace cartansuper
