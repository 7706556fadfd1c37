#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartansuper/families.hpp"
#include "cartansuper/linalg.hpp"
#include "cartansuper/superalgebra.hpp"

namespace cartansuper {

enum class MapParity { Even, Odd, Mixed };

/// Linear endomorphism of a model; matrix(r, c) is the e_r-coordinate of φ(e_c).
struct EndMap {
    Matrix matrix;
    MapParity parity = MapParity::Even;

    /// Wraps `m`, classifying its parity against `a` (the zero map is even).
    static EndMap of(Matrix m, const AlgebraModel& a);
};

[[nodiscard]] MapParity map_parity(const Matrix& m, const AlgebraModel& a);

/// Which parity components of End(L) a computation ranges over.
enum class ParitySelect { Even, Odd, Both };

/// Partition of the unknowns φ_{rc} of End(L) by (shift, parity), where
/// shift = cell(r) - cell(c). A homogeneous map of a given shift and parity
/// only has entries inside one block. Blocks are ordered by shift, then parity.
class EndBlocks {
public:
    struct Block {
        Cell shift;
        int parity = 0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> unknowns;  // (r, c), ascending
    };

    explicit EndBlocks(const AlgebraModel& a);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t count() const noexcept { return blocks_.size(); }
    [[nodiscard]] const Block& block(std::size_t b) const { return blocks_.at(b); }
    [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::uint32_t block_of(std::size_t r, std::size_t c) const { return block_of_[r * dim_ + c]; }
    [[nodiscard]] std::uint32_t local_of(std::size_t r, std::size_t c) const { return local_of_[r * dim_ + c]; }
    /// Index of the block with this shift and parity, or -1.
    [[nodiscard]] std::int64_t find(const Cell& shift, int parity) const;

    /// Local coordinates of a flattened (r*dim + c) vector restricted to block b.
    [[nodiscard]] SparseVec restrict_flat(const SparseVec& flat, std::size_t b) const;
    /// Flattened End(L) vector from local block coordinates.
    [[nodiscard]] SparseVec lift(const SparseVec& local, std::size_t b) const;

private:
    std::size_t dim_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::uint32_t> block_of_;
    std::vector<std::uint32_t> local_of_;
};

/// Leibniz rule D[x,y] = [Dx,y] + (-1)^{|D||x|}[x,Dy] on all basis pairs.
/// Throws ParityError for a mixed-parity map.
[[nodiscard]] bool is_superderivation(const EndMap& d, const AlgebraModel& a);

/// Der(L) (restricted to the selected parity) as a subspace of End(L)
/// flattened row-major (index r*dim + c). Solved per (shift, parity) block.
[[nodiscard]] Subspace derivation_space(const AlgebraModel& a, ParitySelect parity = ParitySelect::Both,
                                        unsigned jobs = 1);

/// Same space from one elimination over all dim² unknowns.
[[nodiscard]] Subspace derivation_space_reference(const AlgebraModel& a,
                                                  ParitySelect parity = ParitySelect::Both);

/// span{ad u : u in the L' basis} in flattened End(L).
[[nodiscard]] Subspace ad_image(const LPrimeModel& p);

/// True iff no nonzero a of nonnegative degree has [a, L'_{-1}] = 0.
[[nodiscard]] bool transitivity_check(const AlgebraModel& ext);
[[nodiscard]] inline bool transitivity_check(const LPrimeModel& p) { return transitivity_check(p.ext); }

struct DerivationReport {
    Family family = Family::W;
    int n = 0;
    std::size_t dim_l = 0;
    std::size_t dim_lprime = 0;
    std::size_t dim_der = 0;
    std::size_t dim_ad = 0;
    bool lemma_der_holds = false;  // derivation_space == ad_image
    bool transitive = false;
};

[[nodiscard]] DerivationReport derivation_report(const LPrimeModel& p, unsigned jobs = 1);

}  // namespace cartansuper
