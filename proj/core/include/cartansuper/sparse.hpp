#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cartansuper/rational.hpp"

namespace cartansuper {

/// One stored coefficient of a sparse vector.
struct Entry {
    std::uint32_t index;
    Rational value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse rational vector: entries sorted by index, no stored zeros.
class SparseVec {
public:
    SparseVec() = default;
    SparseVec(std::initializer_list<std::pair<std::uint32_t, Rational>> terms);

    /// Builds from arbitrary (index, value) terms; duplicates are summed.
    static SparseVec from_terms(std::vector<std::pair<std::uint32_t, Rational>> terms);
    static SparseVec from_dense(std::span<const Rational> dense);
    static SparseVec unit(std::uint32_t index, Rational value = Rational(1));

    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
    [[nodiscard]] auto end() const noexcept { return entries_.end(); }
    [[nodiscard]] const Entry& front() const { return entries_.front(); }

    /// Coefficient at index (zero when absent).
    [[nodiscard]] Rational at(std::uint32_t index) const;
    [[nodiscard]] const Rational* find(std::uint32_t index) const;
    /// One past the largest stored index, or 0 when empty.
    [[nodiscard]] std::uint32_t extent() const noexcept {
        return entries_.empty() ? 0 : entries_.back().index + 1;
    }

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVec& other);
    void scale(const Rational& factor);
    /// Adds a single term, keeping order.
    void add_term(std::uint32_t index, const Rational& value);

    [[nodiscard]] std::vector<Rational> to_dense(std::size_t length) const;
    [[nodiscard]] std::string str() const;

    SparseVec& operator+=(const SparseVec& rhs) {
        axpy(Rational(1), rhs);
        return *this;
    }
    SparseVec& operator-=(const SparseVec& rhs) {
        axpy(Rational(-1), rhs);
        return *this;
    }
    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const Rational& c, SparseVec v) {
        v.scale(c);
        return v;
    }
    SparseVec operator-() const {
        SparseVec r(*this);
        r.scale(Rational(-1));
        return r;
    }
    friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
    std::vector<Entry> entries_;
};

[[nodiscard]] Rational dot(const SparseVec& a, const SparseVec& b);

/// Row-major sparse rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_dense(const std::vector<std::vector<Rational>>& rows);
    /// Rows given explicitly; each must fit within `cols`.
    static Matrix from_rows(std::size_t cols, std::vector<SparseVec> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] const SparseVec& row(std::size_t r) const { return rows_.at(r); }
    [[nodiscard]] const std::vector<SparseVec>& row_data() const noexcept { return rows_; }

    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);
    void add(std::size_t r, std::size_t c, const Rational& value);
    void set_row(std::size_t r, SparseVec row);

    [[nodiscard]] std::size_t nonzeros() const;
    [[nodiscard]] bool is_zero() const;

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] SparseVec apply(const SparseVec& v) const;
    /// Column c as a sparse vector.
    [[nodiscard]] SparseVec column(std::size_t c) const;

    /// Row-major flattening: entry (r, c) lands at r * cols + c.
    [[nodiscard]] SparseVec flatten() const;
    static Matrix unflatten(const SparseVec& v, std::size_t rows, std::size_t cols);

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& c, const Matrix& m);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<SparseVec> rows_;
};

}  // namespace cartansuper
