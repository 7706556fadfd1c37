#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartansuper/exterior.hpp"
#include "cartansuper/superalgebra.hpp"

namespace cartansuper {

/// Which Cartan series, and its number of Grassmann generators.
struct FamilySpec {
    Family family = Family::W;
    int n = 4;

    /// Throws FamilyConstraintError naming the violated constraint
    /// (W, S: n >= 4; Stilde: even n >= 4; H: n > 4).
    void validate() const;
};

/// Constructs W(n), S(n), S̃(n) or H(n) with weights against the standard
/// Cartan subalgebra. The result always passes check_axioms.
[[nodiscard]] AlgebraModel build(const FamilySpec& spec);

/// Generic constructor for a subalgebra of W(n) spanned by `basis` (given in
/// W coordinates). Computes structure constants, parities, degrees and
/// weights against `cartan_w` (also in W coordinates, each inside the span).
/// Throws StructureError if the span is not closed or a basis vector is not
/// a homogeneous weight vector.
[[nodiscard]] AlgebraModel make_model(Family family, int n, std::vector<BasisDesc> basis,
                                      const std::vector<SparseVec>& cartan_w, int grading_modulus);

/// Σ ∂_i(f_i) for v = Σ f_i ∂_i in W coordinates; v ∈ S(n) iff this is 0.
[[nodiscard]] ExtElem divergence(const SparseVec& wcoords, int n);

/// D_H(f) = (-1)^{|f|} Σ ∂_i(f) ∂_{i'} in W coordinates. Throws ParityError
/// when f mixes parities.
[[nodiscard]] SparseVec ham(const ExtElem& f);

/// i' = i + r (i <= r), i - r (r < i <= 2r), i otherwise; r = [n/2].
[[nodiscard]] int involution(int i, int n);

/// ξ_i = x_1 ... x_n ∂_i in W coordinates.
[[nodiscard]] SparseVec xi(int i, int n);

/// The grading element 𝒞 = Σ x_i ∂_i in W coordinates.
[[nodiscard]] SparseVec grading_element(int n);

/// Standard torus h_1..h_l in W coordinates: x_i∂_i (W), x_i∂_i - x_{i+1}∂_{i+1}
/// (S, S̃), x_i∂_i - x_{i'}∂_{i'} for i <= [n/2] (H).
[[nodiscard]] std::vector<SparseVec> standard_cartan_w(Family family, int n);

/// ε-coordinates (ε_K - ε_j) shared by every term of a W-coordinate vector,
/// or nullopt when the terms disagree.
[[nodiscard]] std::optional<std::vector<int>> epsilon_weight(const SparseVec& wcoords, int n);

/// Model coordinates of a W-coordinate vector, or nullopt outside the span.
[[nodiscard]] std::optional<SuperVec> model_coords(const AlgebraModel& a, const SparseVec& wcoords);

/// L with its derivation-realizing extension L' (Der L = ad L').
struct LPrimeModel {
    AlgebraModel base;
    AlgebraModel ext;                 // basis = base basis followed by `extra`
    std::vector<std::string> extra;   // labels of the added generators

    [[nodiscard]] std::size_t dim_l() const noexcept { return base.dim(); }
    [[nodiscard]] std::size_t dim_lprime() const noexcept { return ext.dim(); }
    /// Embeds an L-vector into L' coordinates (identity on the prefix).
    [[nodiscard]] const SuperVec& embed(const SuperVec& v) const { return v; }
};

/// L' = L for W, S̃; L ⊕ ℂ𝒞 for S; H̃(n) ⊕ ℂ𝒞 for H.
[[nodiscard]] LPrimeModel build_lprime(const AlgebraModel& a);

/// Cartan elements (model coordinates) and weights recomputed from the
/// bracket: weight[c][k] is the eigenvalue of ad h_k on basis vector c.
struct CartanAndRoots {
    std::vector<SuperVec> cartan;
    std::vector<WeightVec> weights;
};
[[nodiscard]] CartanAndRoots cartan_and_roots(const AlgebraModel& a);

}  // namespace cartansuper
