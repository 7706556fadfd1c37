#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartansuper/derivations.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/linalg.hpp"

namespace cartansuper {

/// Point of L at which the local condition is imposed.
struct Probe {
    std::string label;
    SuperVec vector;
};

/// {[u, x] : u in L'} as a subspace of L.
[[nodiscard]] Subspace orbit(const SuperVec& x, const LPrimeModel& p);

/// φ(x) ∈ orbit(x).
[[nodiscard]] bool is_local_at(const EndMap& phi, const SuperVec& x, const LPrimeModel& p);

/// Some u in L' has [u, x] = φ(x) and [u, y] = φ(y).
[[nodiscard]] bool is_2local_at(const EndMap& phi, const SuperVec& x, const SuperVec& y,
                                const LPrimeModel& p);

/// Splits φ by (degree, weight) shift; the components sum to φ.
[[nodiscard]] std::map<Cell, EndMap> bigrade_decompose(const EndMap& phi, const AlgebraModel& a);

struct WeightCheck {
    WeightVec weight;
    Rational value;  // Σ t^i c_i
};

struct SeparatingScalar {
    std::int64_t t = 0;
    std::vector<WeightCheck> checks;  // one per realized nonzero weight
    bool separating = false;          // every check value is nonzero
};

/// Evaluates Σ_{i=1}^{l} t^i c_i on every realized nonzero weight of `a`.
[[nodiscard]] SeparatingScalar check_separating(const AlgebraModel& a, std::int64_t t);

/// Smallest t >= 2 passing check_separating on L'.
[[nodiscard]] SeparatingScalar separating_t(const AlgebraModel& ext);

/// h_0 = Σ t^i h_i in L coordinates.
[[nodiscard]] SuperVec cartan_probe(const AlgebraModel& a, std::int64_t t);

/// Probe list following the proof: h_0, h_i, the h_ik combinations, the
/// degree -1 generators (∂_k - ξ_k for S̃), h_0 plus each of them, x + Σ of
/// them for basis x of nonnegative degree, and h_0 + x for those x outside H_L.
[[nodiscard]] std::vector<Probe> proof_probes(const LPrimeModel& p, const SeparatingScalar& t);

/// How the witness u with φ(x) = [u, x] may be chosen for a homogeneous
/// component φ_s of φ.
enum class WitnessMode {
    Any,          // u anywhere in L'
    Homogeneous,  // u in L'_s, the bigrade piece matching the shift of φ_s
};

/// {φ ∈ End(L) : φ(x) ∈ orbit(x) for each added probe x}, maintained per
/// (shift, parity) block of EndBlocks. A probe constrains each homogeneous
/// component of φ separately.
class ConstraintSystem {
public:
    explicit ConstraintSystem(const LPrimeModel& p, unsigned jobs = 1, WitnessMode mode = WitnessMode::Any);

    /// Returns true when the probe cut the space down.
    bool add_probe(const SuperVec& x);
    /// Adds several probes; equivalent to adding them one by one in order.
    void add_probes(const std::vector<SuperVec>& xs);
    /// Imposes φ(x) = 0.
    void add_vanishing(const SuperVec& x);

    [[nodiscard]] std::size_t dim() const;
    /// dim ad L' (sum over blocks of the inner-map ranks).
    [[nodiscard]] std::size_t dim_ad() const;
    /// True when the space equals ad L'.
    [[nodiscard]] bool tight() const;
    [[nodiscard]] bool contains(const Matrix& phi) const;
    /// Every inner map ad(e_u) satisfies every stored constraint.
    [[nodiscard]] bool contains_inner() const;
    /// The whole space, flattened row-major in End(L).
    [[nodiscard]] Subspace space() const;
    /// A member outside ad L', if any.
    [[nodiscard]] std::optional<Matrix> non_inner_member() const;
    [[nodiscard]] const EndBlocks& blocks() const noexcept { return blocks_; }

private:
    using BlockRows = std::vector<std::pair<std::uint32_t, SparseVec>>;
    BlockRows rows_for(const SuperVec& x, bool vanishing) const;
    BlockRows homogeneous_rows_for(const SuperVec& x) const;
    void absorb(std::vector<BlockRows> per_probe);

    const LPrimeModel* p_;
    unsigned jobs_;
    WitnessMode mode_;
    EndBlocks blocks_;
    std::vector<Echelon> constraints_;
    std::vector<Echelon> inner_;  // ad L' restricted to each block
};

/// dim {φ|_{H_L} : φ local at h_1..h_l and every h_ik, φ(h_0) = 0} for
/// h_0 = Σ t^i h_i. Zero means the h_0 argument forces φ|_{H_L} = 0.
[[nodiscard]] std::size_t cartan_collapse_residual(const LPrimeModel& p, std::int64_t t, unsigned jobs = 1);

/// Blockwise constrained space for a probe list.
[[nodiscard]] Subspace constrained_space(const LPrimeModel& p, const std::vector<Probe>& probes,
                                         unsigned jobs = 1, WitnessMode mode = WitnessMode::Any);

/// The same condition imposed on all dim² unknowns at once, without splitting
/// probes into homogeneous components. Contains constrained_space.
[[nodiscard]] Subspace constrained_space_reference(const LPrimeModel& p, const std::vector<Probe>& probes);

enum class Verdict { Certified, Inconclusive };

[[nodiscard]] std::string verdict_name(Verdict v);
[[nodiscard]] std::string witness_mode_name(WitnessMode m);
/// "any" or "homogeneous"; throws ParseError otherwise.
[[nodiscard]] WitnessMode parse_witness_mode(const std::string& name);

struct CertifyOptions {
    std::size_t budget = 0;  // cap on probes kept; 0: 8 * dim L
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    WitnessMode mode = WitnessMode::Any;
    std::optional<std::int64_t> force_t;  // skip the separating search
    std::size_t twolocal_pairs = 100;
    std::size_t random_terms = 12;        // basis vectors per random probe
};

struct Certificate {
    Family family = Family::W;
    int n = 0;
    std::int64_t t = 0;
    bool t_separating = false;
    std::size_t weight_checks = 0;
    std::vector<std::string> probe_labels;
    std::size_t proof_probe_count = 0;
    std::size_t dim_c_proof = 0;  // after the proof probes alone
    std::size_t candidates_tried = 0;
    WitnessMode mode = WitnessMode::Any;
    std::size_t dim_c = 0;
    std::size_t dim_ad = 0;
    Verdict verdict = Verdict::Inconclusive;
    Verdict twolocal_verdict = Verdict::Inconclusive;
    std::size_t twolocal_pairs_checked = 0;
    std::size_t twolocal_pairs_feasible = 0;
    std::string twolocal_failing_pair;  // empty when none was found
    double elapsed_ms = 0;
    std::optional<Matrix> witness;  // non-inner member of C when inconclusive
};

/// Runs the probe schedule until C = ad L' or the budget is spent: the proof
/// probes, then each remaining basis vector of L that cuts C, then seeded
/// random elements that cut C (at most 16 * budget candidates).
[[nodiscard]] Certificate certify(const LPrimeModel& p, const CertifyOptions& opts = {});

/// 2-local verdict by reduction to `c`, plus seeded spot checks.
[[nodiscard]] Certificate certify_2local(const LPrimeModel& p, Certificate c, const CertifyOptions& opts = {});

}  // namespace cartansuper
