#include <gtest/gtest.h>

#include <random>

#include "cartansuper/derivations.hpp"
#include "cartansuper/errors.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/vector_fields.hpp"

using namespace cartansuper;

namespace {

const LPrimeModel& lp(Family f, int n) {
    static std::map<std::pair<int, int>, LPrimeModel> cache;
    auto key = std::make_pair(static_cast<int>(f), n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_lprime(build({f, n}))).first;
    return it->second;
}

SuperVec random_element(std::mt19937_64& rng, std::size_t dim, int parity, const AlgebraModel& a) {
    SuperVec u;
    for (int t = 0; t < 4; ++t) {
        const auto i = static_cast<std::uint32_t>(rng() % dim);
        if (parity >= 0 && a.parity(i) != parity) continue;
        u.add_term(i, Rational(static_cast<std::int64_t>(rng() % 5) - 2));
    }
    return u;
}

// Adds a basis vector of degree 0 and weight θ that brackets to zero with everything.
AlgebraModel with_central_element(const AlgebraModel& a) {
    AlgebraModel::Parts parts = a.parts();
    const std::size_t d = a.dim();
    BasisDesc z;
    z.kind = BasisKind::Combination;
    parts.basis.push_back(z);
    BracketTable table(d + 1);
    for (std::size_t i = 0; i < d; ++i)
        for (const auto& [j, v] : a.parts().bracket.row(i)) table.set(i, j, v);
    parts.bracket = std::move(table);
    parts.parity.push_back(0);
    parts.degree.push_back(0);
    parts.weight.push_back(WeightVec(a.cartan_rank(), 0));
    parts.family = Family::Extended;
    return AlgebraModel(std::move(parts));
}

}  // namespace

TEST(EndBlocks, PartitionCoversEveryUnknownOnce) {
    const AlgebraModel& a = lp(Family::W, 4).base;
    EndBlocks b(a);
    std::size_t total = 0;
    for (std::size_t k = 0; k < b.count(); ++k) {
        for (auto [r, c] : b.block(k).unknowns) {
            EXPECT_EQ(b.block_of(r, c), k);
            EXPECT_EQ((a.parity(r) + a.parity(c)) % 2, b.block(k).parity);
        }
        total += b.block(k).unknowns.size();
    }
    EXPECT_EQ(total, a.dim() * a.dim());
    EXPECT_GE(b.find(Cell{0, {0, 0, 0, 0}}, 0), 0);
    EXPECT_EQ(b.find(Cell{0, {9, 0, 0, 0}}, 0), -1);
}

TEST(EndBlocks, RestrictLiftRoundTrip) {
    const AlgebraModel& a = lp(Family::H, 5).base;
    EndBlocks b(a);
    std::mt19937_64 rng(51);
    for (int it = 0; it < 20; ++it) {
        const std::size_t k = rng() % b.count();
        SparseVec local;
        for (std::size_t t = 0; t < b.block(k).unknowns.size(); ++t)
            if (rng() % 3 == 0) local.add_term(static_cast<std::uint32_t>(t), Rational(static_cast<std::int64_t>(1 + rng() % 4)));
        EXPECT_EQ(b.restrict_flat(b.lift(local, k), k), local);
    }
}

TEST(Superderivation, Examples) {
    const LPrimeModel& p = lp(Family::W, 4);
    const AlgebraModel& a = p.base;
    std::mt19937_64 rng(52);
    for (int it = 0; it < 10; ++it) {
        SuperVec u = random_element(rng, p.dim_lprime(), static_cast<int>(it % 2), p.ext);
        EXPECT_TRUE(is_superderivation(EndMap::of(ad_matrix(p.ext, u, a.dim()), a), a));
    }
    EXPECT_FALSE(is_superderivation(EndMap::of(Matrix::identity(a.dim()), a), a));
    EXPECT_TRUE(is_superderivation(EndMap::of(Matrix(a.dim(), a.dim()), a), a));
    Matrix mixed = ad_matrix(a, SparseVec::unit(0) + SparseVec::unit(4));  // ∂1 odd, x1∂1 even
    EXPECT_EQ(map_parity(mixed, a), MapParity::Mixed);
    EXPECT_THROW((void)is_superderivation(EndMap::of(mixed, a), a), ParityError);
}

TEST(Superderivation, IdentityFailsLeibnizOnOnePair) {
    // Id[∂1, x1∂2] = ∂2 but [Id ∂1, x1∂2] + [∂1, Id x1∂2] = 2∂2.
    const AlgebraModel& a = lp(Family::W, 4).base;
    const WBasis& wb = WBasis::get(4);
    const auto d1 = wb.index(Monomial::one(), 1), x1d2 = wb.index(Monomial::var(1), 2);
    SuperVec br = a.bracket_basis(d1, x1d2);
    EXPECT_NE(br, Rational(2) * br);
}

TEST(DerivationSpace, Dimensions) {
    EXPECT_EQ(derivation_space(lp(Family::W, 4).base).dim(), 64u);
    EXPECT_EQ(derivation_space(lp(Family::S, 4).base).dim(), 50u);
    EXPECT_EQ(derivation_space(lp(Family::Stilde, 4).base).dim(), 49u);
    EXPECT_EQ(derivation_space(lp(Family::H, 5).base).dim(), 32u);
}

TEST(DerivationSpace, ParitySplit) {
    const AlgebraModel& a = lp(Family::W, 4).base;
    const std::size_t even = derivation_space(a, ParitySelect::Even).dim();
    const std::size_t odd = derivation_space(a, ParitySelect::Odd).dim();
    EXPECT_EQ(even + odd, 64u);
    std::size_t even_basis = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) even_basis += a.parity(i) == 0;
    EXPECT_EQ(even, even_basis);
}

TEST(DerivationSpace, BlockwiseAgreesWithWholeSpaceReference) {
    for (Family f : {Family::W, Family::S, Family::Stilde}) {
        const AlgebraModel& a = lp(f, 4).base;
        EXPECT_EQ(derivation_space(a, ParitySelect::Both, 4), derivation_space_reference(a)) << family_name(f);
    }
}

TEST(DerivationSpace, JobsDoNotChangeResult) {
    const AlgebraModel& a = lp(Family::H, 5).base;
    EXPECT_EQ(derivation_space(a, ParitySelect::Both, 1), derivation_space(a, ParitySelect::Both, 3));
}

TEST(AdImage, EqualsDerivationSpace) {
    EXPECT_EQ(ad_image(lp(Family::W, 4)).dim(), 64u);
    EXPECT_EQ(ad_image(lp(Family::S, 4)).dim(), 50u);
    for (auto [f, n] : {std::pair{Family::W, 4}, {Family::S, 4}, {Family::Stilde, 4}, {Family::H, 5}}) {
        DerivationReport r = derivation_report(lp(f, n), 2);
        EXPECT_TRUE(r.lemma_der_holds) << family_name(f);
        EXPECT_EQ(r.dim_der, r.dim_ad);
        EXPECT_EQ(r.dim_ad, r.dim_lprime);
    }
}

TEST(Transitivity, Examples) {
    EXPECT_TRUE(transitivity_check(lp(Family::W, 4)));
    EXPECT_TRUE(transitivity_check(lp(Family::Stilde, 4)));
    EXPECT_TRUE(transitivity_check(lp(Family::H, 5)));
    AlgebraModel faulty = with_central_element(lp(Family::W, 4).ext);
    EXPECT_TRUE(check_axioms(faulty).ok);
    EXPECT_FALSE(transitivity_check(faulty));
}
