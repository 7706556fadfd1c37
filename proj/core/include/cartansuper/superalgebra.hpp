#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartansuper/exterior.hpp"
#include "cartansuper/sparse.hpp"

namespace cartansuper {

enum class Family { W, S, Stilde, H, Htilde, Extended };

[[nodiscard]] std::string family_name(Family f);
/// Accepts "W", "S", "Stilde" (or "S~"), "H", "Htilde", "Extended".
[[nodiscard]] Family parse_family(const std::string& name);

/// Element of a model, coordinates over its basis.
using SuperVec = SparseVec;

/// Simultaneous eigenvalues (α(h_1), ..., α(h_l)); the zero vector is θ.
using WeightVec = std::vector<int>;

[[nodiscard]] bool is_zero_weight(const WeightVec& w);
[[nodiscard]] WeightVec operator+(const WeightVec& a, const WeightVec& b);
[[nodiscard]] WeightVec operator-(const WeightVec& a, const WeightVec& b);
[[nodiscard]] std::string weight_str(const WeightVec& w);

enum class BasisKind { VectorField, Ham, Grading, Combination };

/// What a basis vector is, plus its expansion f_1∂_1 + ... + f_n∂_n in W(n)
/// coordinates (see WBasis). Every model lives inside W(n).
struct BasisDesc {
    BasisKind kind = BasisKind::Combination;
    Monomial mono;      // VectorField coefficient or Ham argument
    int direction = 0;  // VectorField only
    SparseVec wcoords;

    /// Descriptor string: "x1x2.d3", "H(x1x2)", "C", or a W-expansion.
    [[nodiscard]] std::string label(int n) const;
    friend bool operator==(const BasisDesc&, const BasisDesc&) = default;
};

/// (Z- or Z_n-degree, weight) bidegree of a homogeneous basis vector.
struct Cell {
    int degree = 0;
    WeightVec weight;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Sparse structure constants [e_i, e_j].
class BracketTable {
public:
    BracketTable() = default;
    explicit BracketTable(std::size_t dim) : rows_(dim) {}

    [[nodiscard]] std::size_t dim() const noexcept { return rows_.size(); }
    [[nodiscard]] const SparseVec& get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, SparseVec value);
    /// Nonzero (j, [e_i, e_j]) for fixed i, ascending j.
    [[nodiscard]] const std::vector<std::pair<std::uint32_t, SparseVec>>& row(std::size_t i) const {
        return rows_.at(i);
    }
    [[nodiscard]] std::size_t nonzeros() const;
    friend bool operator==(const BracketTable&, const BracketTable&) = default;

private:
    std::vector<std::vector<std::pair<std::uint32_t, SparseVec>>> rows_;
};

/// Finite-dimensional graded Lie superalgebra given by structure constants.
///
/// Immutable after construction apart from the explicit fault-injection
/// setter used by tests.
class AlgebraModel {
public:
    struct Parts {
        Family family = Family::W;
        int n = 0;
        std::vector<BasisDesc> basis;
        BracketTable bracket;
        std::vector<int> parity;
        std::vector<int> degree;
        std::vector<WeightVec> weight;
        std::vector<std::size_t> cartan;          // basis indices spanning H_L
        std::vector<SuperVec> cartan_elements;    // h_1..h_l the weights refer to
        int grading_modulus = 0;                  // 0: Z-graded; n: Z_n-graded
        friend bool operator==(const Parts&, const Parts&) = default;
    };

    AlgebraModel() = default;
    explicit AlgebraModel(Parts parts);

    [[nodiscard]] Family family() const noexcept { return p_.family; }
    [[nodiscard]] int n() const noexcept { return p_.n; }
    [[nodiscard]] std::size_t dim() const noexcept { return p_.basis.size(); }
    [[nodiscard]] const Parts& parts() const noexcept { return p_; }

    [[nodiscard]] const BasisDesc& basis(std::size_t i) const { return p_.basis.at(i); }
    [[nodiscard]] int parity(std::size_t i) const { return p_.parity.at(i); }
    [[nodiscard]] int degree(std::size_t i) const { return p_.degree.at(i); }
    [[nodiscard]] const WeightVec& weight(std::size_t i) const { return p_.weight.at(i); }
    [[nodiscard]] Cell cell(std::size_t i) const { return {p_.degree.at(i), p_.weight.at(i)}; }
    [[nodiscard]] std::size_t cartan_rank() const noexcept { return p_.cartan_elements.size(); }
    [[nodiscard]] const std::vector<SuperVec>& cartan_elements() const noexcept {
        return p_.cartan_elements;
    }
    [[nodiscard]] const std::vector<std::size_t>& cartan() const noexcept { return p_.cartan; }
    [[nodiscard]] int grading_modulus() const noexcept { return p_.grading_modulus; }

    /// Degree reduced to the stored representative range (mod n when
    /// Z_n-graded, representatives -1..n-2).
    [[nodiscard]] int normalize_degree(int d) const;
    [[nodiscard]] Cell shift_cell(const Cell& c, const Cell& by) const;

    [[nodiscard]] const SparseVec& bracket_basis(std::size_t i, std::size_t j) const {
        return p_.bracket.get(i, j);
    }
    [[nodiscard]] SuperVec bracket(const SuperVec& a, const SuperVec& b) const;
    /// [e_i, v]
    [[nodiscard]] SuperVec bracket_with(std::size_t i, const SuperVec& v) const;

    /// Parity of a vector: 0/1, or -1 when it mixes parities (0 is even).
    [[nodiscard]] int parity_of(const SuperVec& v) const;
    /// W(n) expansion of a model vector.
    [[nodiscard]] SparseVec to_wcoords(const SuperVec& v) const;

    friend bool operator==(const AlgebraModel& a, const AlgebraModel& b) { return a.p_ == b.p_; }

    /// Fault injection: overwrite one structure constant.
    void set_bracket(std::size_t i, std::size_t j, SparseVec value) { p_.bracket.set(i, j, std::move(value)); }

private:
    Parts p_;
};

/// dim(L) x dim(L) matrix of x -> [u, x] where u lies in `ext` and L is the
/// coordinate prefix of `ext` of length dim_l (L ⊆ L' embedding).
[[nodiscard]] Matrix ad_matrix(const AlgebraModel& ext, const SuperVec& u, std::size_t dim_l);
[[nodiscard]] inline Matrix ad_matrix(const AlgebraModel& a, const SuperVec& u) {
    return ad_matrix(a, u, a.dim());
}

struct AxiomOptions {
    /// 0: scan every basis triple for Jacobi; otherwise sample this many.
    std::size_t sampled_triples = 0;
    std::uint64_t seed = 1;
};

struct AxiomReport {
    bool ok = true;
    std::string failure;                         // empty on success
    std::optional<std::array<std::size_t, 3>> witness;  // offending basis indices
    std::size_t pairs_checked = 0;
    std::size_t triples_checked = 0;
};

/// Super-anticommutativity, super-Jacobi, parity/degree/weight additivity.
[[nodiscard]] AxiomReport check_axioms(const AlgebraModel& a, const AxiomOptions& opts = {});

/// Partition of basis indices by (degree, weight).
[[nodiscard]] std::map<Cell, std::vector<std::size_t>> bigrade_blocks(const AlgebraModel& a);

}  // namespace cartansuper
