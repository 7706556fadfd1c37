#include "cartansuper/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "cartansuper/errors.hpp"

namespace cartansuper {

namespace {

// Eliminates every entry of `row` sitting in a pivot column of `rows`,
// optionally leaving the pivot column `keep` untouched.
void eliminate(SparseVec& row, const std::vector<SparseVec>& rows,
               const std::vector<std::int32_t>& pivot_row, std::int64_t keep = -1) {
    std::size_t pos = 0;
    while (pos < row.size()) {
        const Entry& e = row.entries()[pos];
        std::int32_t pr = pivot_row[e.index];
        if (pr < 0 || static_cast<std::int64_t>(e.index) == keep) {
            ++pos;
            continue;
        }
        Rational factor = -e.value;
        row.axpy(factor, rows[static_cast<std::size_t>(pr)]);
    }
}

}  // namespace

Echelon::Echelon(std::size_t cols) : cols_(cols), pivot_row_(cols, -1) {}

bool Echelon::insert(SparseVec row) {
    if (row.extent() > cols_) {
        throw DimensionMismatch("Echelon::insert: row longer than column count");
    }
    eliminate(row, rows_, pivot_row_);
    if (row.empty()) {
        return false;
    }
    Rational lead = row.front().value;
    if (!lead.is_one()) {
        row.scale(Rational(1) / lead);
    }
    pivot_row_[row.front().index] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

SparseVec Echelon::reduce(SparseVec row) const {
    if (row.extent() > cols_) {
        throw DimensionMismatch("Echelon::reduce: row longer than column count");
    }
    eliminate(row, rows_, pivot_row_);
    return row;
}

std::vector<std::size_t> Echelon::pivots() const {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.front().index);
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<SparseVec> Echelon::rref() const {
    std::vector<SparseVec> sorted = rows_;
    std::sort(sorted.begin(), sorted.end(), [](const SparseVec& a, const SparseVec& b) {
        return a.front().index < b.front().index;
    });
    std::vector<std::int32_t> lookup(cols_, -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        lookup[sorted[i].front().index] = static_cast<std::int32_t>(i);
    }
    // Rows with larger pivots are finished first, so each elimination only
    // introduces non-pivot columns.
    for (std::size_t k = sorted.size(); k-- > 0;) {
        eliminate(sorted[k], sorted, lookup, sorted[k].front().index);
    }
    return sorted;
}

Subspace::Subspace(std::size_t ambient) : ambient_(ambient) {}

Subspace::Subspace(std::size_t ambient, const std::vector<SparseVec>& spanning) : ambient_(ambient) {
    Echelon ech(ambient);
    for (const auto& v : spanning) {
        ech.insert(v);
    }
    basis_ = ech.rref();
    pivots_.reserve(basis_.size());
    for (const auto& r : basis_) pivots_.push_back(r.front().index);
}

Subspace Subspace::full(std::size_t ambient) {
    std::vector<SparseVec> rows;
    rows.reserve(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        rows.push_back(SparseVec::unit(static_cast<std::uint32_t>(i)));
    }
    return Subspace(ambient, rows);
}

SparseVec Subspace::residual(const SparseVec& v) const {
    if (v.extent() > ambient_) {
        throw DimensionMismatch("Subspace::residual: vector longer than ambient dimension");
    }
    SparseVec r = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const Rational* c = v.find(static_cast<std::uint32_t>(pivots_[k]));
        if (c) {
            r.axpy(-*c, basis_[k]);
        }
    }
    return r;
}

std::size_t rank(const Matrix& m) {
    Echelon ech(m.cols());
    for (const auto& r : m.row_data()) {
        ech.insert(r);
    }
    return ech.rank();
}

Subspace kernel(const Matrix& m) {
    Echelon ech(m.cols());
    for (const auto& r : m.row_data()) {
        ech.insert(r);
    }
    std::vector<SparseVec> reduced = ech.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (const auto& r : reduced) is_pivot[r.front().index] = true;

    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> terms(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) terms[c].emplace_back(static_cast<std::uint32_t>(c), Rational(1));
    }
    for (const auto& r : reduced) {
        std::uint32_t p = r.front().index;
        for (const auto& e : r) {
            if (e.index != p) {
                terms[e.index].emplace_back(p, -e.value);
            }
        }
    }
    std::vector<SparseVec> vecs;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) vecs.push_back(SparseVec::from_terms(std::move(terms[c])));
    }
    return Subspace(m.cols(), vecs);
}

Subspace row_space(const Matrix& m) { return Subspace(m.cols(), m.row_data()); }

Subspace column_space(const Matrix& m) { return row_space(m.transpose()); }

std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b) {
    if (b.extent() > m.rows()) {
        throw DimensionMismatch("solve: right-hand side longer than row count");
    }
    const std::size_t cols = m.cols();
    Echelon ech(cols + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        if (const Rational* br = b.find(static_cast<std::uint32_t>(r))) {
            row.add_term(static_cast<std::uint32_t>(cols), *br);
        }
        ech.insert(std::move(row));
    }
    std::vector<std::pair<std::uint32_t, Rational>> x;
    for (const auto& row : ech.rref()) {
        std::uint32_t p = row.front().index;
        if (p == cols) {
            return std::nullopt;
        }
        if (const Rational* v = row.find(static_cast<std::uint32_t>(cols))) {
            x.emplace_back(p, *v);
        }
    }
    return SparseVec::from_terms(std::move(x));
}

bool member(const Subspace& s, const SparseVec& v) { return s.residual(v).empty(); }

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("intersect: ambient dimensions differ");
    }
    const std::size_t n = a.ambient_dim();
    const auto shift = static_cast<std::uint32_t>(n);
    Echelon ech(2 * n);
    for (const auto& r : a.basis()) {
        std::vector<std::pair<std::uint32_t, Rational>> terms;
        terms.reserve(2 * r.size());
        for (const auto& e : r) {
            terms.emplace_back(e.index, e.value);
            terms.emplace_back(e.index + shift, e.value);
        }
        ech.insert(SparseVec::from_terms(std::move(terms)));
    }
    for (const auto& r : b.basis()) {
        ech.insert(r);
    }
    std::vector<SparseVec> inter;
    for (const auto& r : ech.rows()) {
        if (r.front().index >= n) {
            std::vector<std::pair<std::uint32_t, Rational>> terms;
            for (const auto& e : r) terms.emplace_back(e.index - shift, e.value);
            inter.push_back(SparseVec::from_terms(std::move(terms)));
        }
    }
    return Subspace(n, inter);
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("sum: ambient dimensions differ");
    }
    std::vector<SparseVec> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return Subspace(a.ambient_dim(), rows);
}

bool is_subspace_of(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw DimensionMismatch("is_subspace_of: ambient dimensions differ");
    }
    if (a.dim() > b.dim()) {
        return false;
    }
    return std::all_of(a.basis().begin(), a.basis().end(),
                       [&](const SparseVec& v) { return member(b, v); });
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis_matrix()); }

CoordinateSolver::CoordinateSolver(std::size_t ambient, const std::vector<SparseVec>& basis)
    : ambient_(ambient), dim_(basis.size()) {
    unit_basis_ = std::all_of(basis.begin(), basis.end(),
                              [](const SparseVec& v) { return v.size() == 1 && v.front().value.is_one(); });
    if (unit_basis_) {
        unit_lookup_.assign(ambient, -1);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::uint32_t idx = basis[i].front().index;
            if (idx >= ambient || unit_lookup_[idx] >= 0) {
                throw StructureError("CoordinateSolver: dependent or out-of-range basis");
            }
            unit_lookup_[idx] = static_cast<std::int32_t>(i);
            unit_index_.push_back(idx);
        }
        return;
    }
    const auto shift = static_cast<std::uint32_t>(ambient);
    Echelon ech(ambient + basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        SparseVec row = basis[i];
        if (row.extent() > ambient) {
            throw DimensionMismatch("CoordinateSolver: basis vector longer than ambient");
        }
        row.add_term(shift + static_cast<std::uint32_t>(i), Rational(1));
        ech.insert(std::move(row));
    }
    pivot_lookup_.assign(ambient, -1);
    for (auto& row : ech.rref()) {
        if (row.front().index >= ambient) {
            throw StructureError("CoordinateSolver: basis is linearly dependent");
        }
        SparseVec left;
        std::vector<std::pair<std::uint32_t, Rational>> right;
        std::vector<std::pair<std::uint32_t, Rational>> left_terms;
        for (const auto& e : row) {
            if (e.index < ambient) {
                left_terms.emplace_back(e.index, e.value);
            } else {
                right.emplace_back(e.index - shift, e.value);
            }
        }
        left = SparseVec::from_terms(std::move(left_terms));
        pivot_lookup_[left.front().index] = static_cast<std::int32_t>(rref_.size());
        pivots_.push_back(left.front().index);
        rref_.push_back(std::move(left));
        transform_.push_back(SparseVec::from_terms(std::move(right)));
    }
}

std::optional<SparseVec> CoordinateSolver::coords(const SparseVec& v) const {
    if (v.extent() > ambient_) {
        return std::nullopt;
    }
    if (unit_basis_) {
        std::vector<std::pair<std::uint32_t, Rational>> terms;
        terms.reserve(v.size());
        for (const auto& e : v) {
            std::int32_t i = unit_lookup_[e.index];
            if (i < 0) {
                return std::nullopt;
            }
            terms.emplace_back(static_cast<std::uint32_t>(i), e.value);
        }
        return SparseVec::from_terms(std::move(terms));
    }
    SparseVec residual = v;
    SparseVec out;
    for (const auto& e : v) {
        std::int32_t k = pivot_lookup_[e.index];
        if (k >= 0) {
            residual.axpy(-e.value, rref_[static_cast<std::size_t>(k)]);
            out.axpy(e.value, transform_[static_cast<std::size_t>(k)]);
        }
    }
    if (!residual.empty()) {
        return std::nullopt;
    }
    return out;
}

}  // namespace cartansuper
