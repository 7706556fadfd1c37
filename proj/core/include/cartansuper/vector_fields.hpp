#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cartansuper/exterior.hpp"
#include "cartansuper/sparse.hpp"

namespace cartansuper {

/// Coordinate system of W(n) = Der Λ(n): one coordinate per f∂_j with f a
/// monomial. Coordinates are ordered by deg f, then by the bitmask of f,
/// then by j, so Z-degrees appear in ascending blocks.
class WBasis {
public:
    explicit WBasis(int n);

    /// Shared instance per n.
    static const WBasis& get(int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return monos_.size(); }

    [[nodiscard]] std::uint32_t index(Monomial f, int j) const;
    [[nodiscard]] Monomial mono(std::uint32_t idx) const { return monos_.at(idx); }
    [[nodiscard]] int direction(std::uint32_t idx) const { return dirs_.at(idx); }
    /// deg f - 1
    [[nodiscard]] int degree(std::uint32_t idx) const { return monos_.at(idx).degree() - 1; }
    /// |f∂_j| = |f| + 1 (mod 2)
    [[nodiscard]] int parity(std::uint32_t idx) const { return (monos_.at(idx).degree() + 1) & 1; }

    /// f∂_j for a general f ∈ Λ(n).
    [[nodiscard]] SparseVec field(const ExtElem& f, int j) const;
    /// Coefficient f_j of ∂_j in v = Σ f_i ∂_i.
    [[nodiscard]] ExtElem coefficient(const SparseVec& v, int j) const;

    /// Supercommutator of vector fields given in these coordinates.
    [[nodiscard]] SparseVec bracket(const SparseVec& a, const SparseVec& b) const;
    [[nodiscard]] SparseVec bracket_basis(std::uint32_t a, std::uint32_t b) const;

    /// Applies a vector field to an element of Λ(n).
    [[nodiscard]] ExtElem apply(const SparseVec& v, const ExtElem& f) const;

    /// Text form: "d1", "x1x2.d3", "x2.d3 - x1.d4", "2*x1.d1 + 1/2*d2".
    [[nodiscard]] std::string render(const SparseVec& v) const;
    /// Inverse of render(); throws ParseError.
    [[nodiscard]] SparseVec parse(std::string_view text) const;

private:
    int n_;
    std::vector<Monomial> monos_;
    std::vector<int> dirs_;
    std::vector<std::uint32_t> lookup_;  // bits * n + (j - 1) -> index
};

}  // namespace cartansuper
