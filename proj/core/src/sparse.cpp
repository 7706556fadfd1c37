#include "cartansuper/sparse.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cartansuper/errors.hpp"

namespace cartansuper {

SparseVec::SparseVec(std::initializer_list<std::pair<std::uint32_t, Rational>> terms) {
    *this = from_terms(std::vector<std::pair<std::uint32_t, Rational>>(terms));
}

SparseVec SparseVec::from_terms(std::vector<std::pair<std::uint32_t, Rational>> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.entries_.reserve(terms.size());
    for (auto& [idx, val] : terms) {
        if (!out.entries_.empty() && out.entries_.back().index == idx) {
            out.entries_.back().value += val;
            if (out.entries_.back().value.is_zero()) {
                out.entries_.pop_back();
            }
        } else if (!val.is_zero()) {
            out.entries_.push_back(Entry{idx, std::move(val)});
        }
    }
    return out;
}

SparseVec SparseVec::from_dense(std::span<const Rational> dense) {
    SparseVec out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (!dense[i].is_zero()) {
            out.entries_.push_back(Entry{static_cast<std::uint32_t>(i), dense[i]});
        }
    }
    return out;
}

SparseVec SparseVec::unit(std::uint32_t index, Rational value) {
    SparseVec out;
    if (!value.is_zero()) {
        out.entries_.push_back(Entry{index, std::move(value)});
    }
    return out;
}

const Rational* SparseVec::find(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.index < i; });
    if (it != entries_.end() && it->index == index) {
        return &it->value;
    }
    return nullptr;
}

Rational SparseVec::at(std::uint32_t index) const {
    const Rational* p = find(index);
    return p ? *p : Rational(0);
}

void SparseVec::axpy(const Rational& factor, const SparseVec& other) {
    if (factor.is_zero() || other.entries_.empty()) {
        return;
    }
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
            merged.push_back(std::move(*a));
            ++a;
        } else if (a == entries_.end() || b->index < a->index) {
            merged.push_back(Entry{b->index, factor * b->value});
            ++b;
        } else {
            Rational v = std::move(a->value);
            v += factor * b->value;
            if (!v.is_zero()) {
                merged.push_back(Entry{a->index, std::move(v)});
            }
            ++a;
            ++b;
        }
    }
    entries_ = std::move(merged);
}

void SparseVec::scale(const Rational& factor) {
    if (factor.is_zero()) {
        entries_.clear();
        return;
    }
    if (factor.is_one()) {
        return;
    }
    for (auto& e : entries_) {
        e.value *= factor;
    }
}

void SparseVec::add_term(std::uint32_t index, const Rational& value) {
    if (value.is_zero()) {
        return;
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.index < i; });
    if (it != entries_.end() && it->index == index) {
        it->value += value;
        if (it->value.is_zero()) {
            entries_.erase(it);
        }
    } else {
        entries_.insert(it, Entry{index, value});
    }
}

std::vector<Rational> SparseVec::to_dense(std::size_t length) const {
    std::vector<Rational> out(length);
    for (const auto& e : entries_) {
        if (e.index >= length) {
            throw DimensionMismatch("SparseVec::to_dense: index out of range");
        }
        out[e.index] = e.value;
    }
    return out;
}

std::string SparseVec::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& e : entries_) {
        if (!first) os << ", ";
        os << e.index << ": " << e.value;
        first = false;
    }
    os << '}';
    return os.str();
}

Rational dot(const SparseVec& a, const SparseVec& b) {
    Rational acc;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->index < ib->index) {
            ++ia;
        } else if (ib->index < ia->index) {
            ++ib;
        } else {
            acc += ia->value * ib->value;
            ++ia;
            ++ib;
        }
    }
    return acc;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.rows_[i] = SparseVec::unit(static_cast<std::uint32_t>(i));
    }
    return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("Matrix::from_dense: ragged rows");
        }
        m.rows_[r] = SparseVec::from_dense(rows[r]);
    }
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<SparseVec> rows) {
    for (const auto& r : rows) {
        if (r.extent() > cols) {
            throw DimensionMismatch("Matrix::from_rows: entry beyond column count");
        }
    }
    Matrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

Rational Matrix::at(std::size_t r, std::size_t c) const {
    return rows_.at(r).at(static_cast<std::uint32_t>(c));
}

void Matrix::set(std::size_t r, std::size_t c, const Rational& value) {
    if (r >= rows_.size() || c >= cols_) {
        throw DimensionMismatch("Matrix::set: index out of range");
    }
    Rational old = rows_[r].at(static_cast<std::uint32_t>(c));
    rows_[r].add_term(static_cast<std::uint32_t>(c), value - old);
}

void Matrix::add(std::size_t r, std::size_t c, const Rational& value) {
    if (r >= rows_.size() || c >= cols_) {
        throw DimensionMismatch("Matrix::add: index out of range");
    }
    rows_[r].add_term(static_cast<std::uint32_t>(c), value);
}

void Matrix::set_row(std::size_t r, SparseVec row) {
    if (r >= rows_.size() || row.extent() > cols_) {
        throw DimensionMismatch("Matrix::set_row: index out of range");
    }
    rows_[r] = std::move(row);
}

std::size_t Matrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

bool Matrix::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const SparseVec& r) { return r.empty(); });
}

Matrix Matrix::transpose() const {
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> cols(cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (const auto& e : rows_[r]) {
            cols[e.index].emplace_back(static_cast<std::uint32_t>(r), e.value);
        }
    }
    Matrix t(cols_, rows_.size());
    for (std::size_t c = 0; c < cols_; ++c) {
        t.rows_[c] = SparseVec::from_terms(std::move(cols[c]));
    }
    return t;
}

SparseVec Matrix::apply(const SparseVec& v) const {
    if (v.extent() > cols_) {
        throw DimensionMismatch("Matrix::apply: vector longer than column count");
    }
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational d = dot(rows_[r], v);
        if (!d.is_zero()) {
            terms.emplace_back(static_cast<std::uint32_t>(r), std::move(d));
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

SparseVec Matrix::column(std::size_t c) const {
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (const Rational* p = rows_[r].find(static_cast<std::uint32_t>(c))) {
            terms.emplace_back(static_cast<std::uint32_t>(r), *p);
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

SparseVec Matrix::flatten() const {
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (const auto& e : rows_[r]) {
            terms.emplace_back(static_cast<std::uint32_t>(r * cols_ + e.index), e.value);
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

Matrix Matrix::unflatten(const SparseVec& v, std::size_t rows, std::size_t cols) {
    if (v.extent() > rows * cols) {
        throw DimensionMismatch("Matrix::unflatten: vector longer than rows*cols");
    }
    Matrix m(rows, cols);
    for (const auto& e : v) {
        m.rows_[e.index / cols].add_term(static_cast<std::uint32_t>(e.index % cols), e.value);
    }
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("Matrix product: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseVec acc;
        for (const auto& e : a.row(r)) {
            acc.axpy(e.value, b.row(e.index));
        }
        out.rows_[r] = std::move(acc);
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("Matrix sum: shapes differ");
    }
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        out.rows_[r] += b.row(r);
    }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("Matrix difference: shapes differ");
    }
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        out.rows_[r] -= b.row(r);
    }
    return out;
}

Matrix operator*(const Rational& c, const Matrix& m) {
    Matrix out = m;
    for (auto& r : out.rows_) {
        r.scale(c);
    }
    return out;
}

}  // namespace cartansuper
