#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cartansuper/errors.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/vector_fields.hpp"
#include "oracle.hpp"

using namespace cartansuper;

namespace {

SparseVec w(int n, const char* text) { return WBasis::get(n).parse(text); }

std::string constraint_message(FamilySpec s) {
    try {
        s.validate();
    } catch (const FamilyConstraintError& e) {
        return e.what();
    }
    return "";
}

std::size_t degree_dim(const AlgebraModel& a, int d) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) k += a.degree(i) == d;
    return k;
}

int top_degree(const AlgebraModel& a) {
    int t = -100;
    for (std::size_t i = 0; i < a.dim(); ++i) t = std::max(t, a.degree(i));
    return t;
}

std::set<WeightVec> realized_roots(const AlgebraModel& a) {
    std::set<WeightVec> out;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (!is_zero_weight(a.weight(i))) out.insert(a.weight(i));
    return out;
}

}  // namespace

TEST(FamilySpec, ConstraintMessages) {
    EXPECT_NE(constraint_message({Family::Stilde, 5}).find("S̃ requires even n"), std::string::npos);
    EXPECT_NE(constraint_message({Family::H, 4}).find("H requires n > 4"), std::string::npos);
    EXPECT_NE(constraint_message({Family::W, 3}).find("n >= 4"), std::string::npos);
    EXPECT_NE(constraint_message({Family::S, 2}).find("n >= 4"), std::string::npos);
    EXPECT_EQ(constraint_message({Family::H, 5}), "");
    EXPECT_THROW((void)build({Family::H, 4}), FamilyConstraintError);
}

TEST(Families, Dimensions) {
    EXPECT_EQ(build({Family::W, 4}).dim(), 64u);
    EXPECT_EQ(build({Family::S, 4}).dim(), 49u);
    EXPECT_EQ(build({Family::Stilde, 4}).dim(), 49u);
    EXPECT_EQ(build({Family::H, 5}).dim(), 30u);
    EXPECT_EQ(build({Family::H, 6}).dim(), 62u);
}

TEST(Families, DimensionsAgreeWithDenseOracles) {
    for (int n : {4, 5}) {
        EXPECT_EQ(build({Family::W, n}).dim(), static_cast<std::size_t>(n) << n);
        EXPECT_EQ(build({Family::S, n}).dim(), (static_cast<std::size_t>(n) << n) - oracle::divergence_rank(n));
    }
    for (int n : {5, 6}) EXPECT_EQ(build({Family::H, n}).dim(), oracle::ham_image_rank(n));
}

TEST(Families, DivergenceExamples) {
    EXPECT_TRUE(divergence(w(4, "x1.d2"), 4).is_zero());
    EXPECT_EQ(divergence(w(4, "x1.d1"), 4), ExtElem(4, Monomial::one()));
    EXPECT_TRUE(divergence(w(4, "x1.d2 + x2.d1"), 4).is_zero());
}

TEST(Families, HamExamples) {
    EXPECT_EQ(ham(ExtElem(5, Monomial::parse("x1x2"))), w(5, "x2.d3 - x1.d4"));
    EXPECT_TRUE(ham(ExtElem(5, Monomial::one())).empty());
    EXPECT_EQ(ham(ExtElem(5, Monomial::parse("x5"))), -w(5, "d5"));
    EXPECT_THROW((void)ham(ExtElem(5, Monomial::parse("x1")) + ExtElem(5, Monomial::parse("x1x2"))), ParityError);
}

TEST(Families, HamMatchesOracle) {
    const WBasis& wb = WBasis::get(5);
    for (std::uint32_t f = 0; f < 32; ++f) {
        oracle::Field got;
        for (const auto& t : ham(ExtElem(5, Monomial{f})))
            got[{static_cast<std::uint32_t>(wb.mono(t.index).bits), wb.direction(t.index)}] = t.value.to_mpq();
        oracle::Field expect;
        for (const auto& [k, v] : oracle::ham(f, 5))
            if (v != 0) expect[k] = v;
        EXPECT_EQ(got, expect) << f;
    }
}

TEST(Families, InvolutionExamples) {
    EXPECT_EQ(involution(1, 5), 3);
    EXPECT_EQ(involution(5, 5), 5);
    EXPECT_EQ(involution(4, 6), 1);
    EXPECT_THROW((void)involution(7, 6), IndexOutOfRange);
}

TEST(Families, XiExamples) {
    EXPECT_EQ(xi(1, 4), w(4, "x1x2x3x4.d1"));
    const WBasis& wb = WBasis::get(4);
    for (int i = 1; i <= 4; ++i) {
        for (const auto& t : xi(i, 4)) EXPECT_EQ(wb.degree(t.index), 3);
        SparseVec br = wb.bracket(w(4, ("d" + std::to_string(i)).c_str()), xi(i, 4));
        ASSERT_FALSE(br.empty());
        for (const auto& t : br) EXPECT_EQ(wb.degree(t.index), 2);
    }
}

TEST(Families, LPrimeDimensions) {
    EXPECT_EQ(build_lprime(build({Family::W, 4})).dim_lprime(), 64u);
    EXPECT_EQ(build_lprime(build({Family::Stilde, 4})).dim_lprime(), 49u);
    EXPECT_EQ(build_lprime(build({Family::S, 4})).dim_lprime(), 50u);
    EXPECT_EQ(build_lprime(build({Family::H, 5})).dim_lprime(), 32u);
    EXPECT_EQ(build_lprime(build({Family::H, 6})).dim_lprime(), 64u);
}

TEST(Families, LPrimeIsClosedAndContainsL) {
    for (FamilySpec s : {FamilySpec{Family::S, 4}, FamilySpec{Family::H, 5}}) {
        LPrimeModel p = build_lprime(build(s));
        EXPECT_TRUE(check_axioms(p.ext).ok);
        for (std::size_t i = 0; i < p.dim_l(); ++i) EXPECT_EQ(p.ext.basis(i), p.base.basis(i));
        // [L', L] ⊆ L
        EXPECT_NO_THROW((void)ad_matrix(p.ext, SparseVec::unit(static_cast<std::uint32_t>(p.dim_lprime() - 1)),
                                        p.dim_l()));
    }
}

TEST(Families, WeightExamples) {
    AlgebraModel a = build({Family::W, 4});
    const WBasis& wb = WBasis::get(4);
    EXPECT_EQ(a.weight(wb.index(Monomial::parse("x1x2"), 3)), (WeightVec{1, 1, -1, 0}));
    EXPECT_EQ(a.weight(wb.index(Monomial::parse("x3"), 3)), (WeightVec{0, 0, 0, 0}));

    AlgebraModel s = build({Family::S, 4});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto eps = epsilon_weight(s.basis(i).wcoords, 4);
        ASSERT_TRUE(eps.has_value());
        EXPECT_NE(*eps, (std::vector<int>{0, 1, 1, 1}));
    }
}

TEST(Families, GradedPieces) {
    EXPECT_EQ(degree_dim(build({Family::W, 4}), 0), 16u);
    EXPECT_EQ(degree_dim(build({Family::S, 4}), 0), 15u);
    EXPECT_EQ(degree_dim(build({Family::Stilde, 4}), 0), 15u);
    EXPECT_EQ(degree_dim(build({Family::H, 5}), 0), 10u);
    EXPECT_EQ(top_degree(build({Family::W, 4})), 3);
    EXPECT_EQ(top_degree(build({Family::S, 4})), 2);
    EXPECT_EQ(top_degree(build({Family::H, 5})), 2);
    EXPECT_EQ(top_degree(build({Family::H, 6})), 3);
}

TEST(Families, StildeUsesTwistedGenerators) {
    AlgebraModel a = build({Family::Stilde, 4});
    EXPECT_EQ(a.grading_modulus(), 4);
    std::size_t neg = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.degree(i) != -1) continue;
        ++neg;
        const int k = a.basis(i).wcoords.front().index + 1;
        EXPECT_EQ(a.basis(i).wcoords, w(4, ("d" + std::to_string(k)).c_str()) - xi(k, 4));
    }
    EXPECT_EQ(neg, 4u);
}

TEST(Families, RootSystems) {
    EXPECT_EQ(realized_roots(build({Family::W, 4})), oracle::w_roots(4));

    std::set<oracle::Weight> s_eps = oracle::w_roots(4);
    for (int i = 1; i <= 4; ++i) s_eps.erase(oracle::epsilon(0xF, i, 4));
    for (Family f : {Family::S, Family::Stilde}) {
        AlgebraModel a = build({f, 4});
        std::set<oracle::Weight> eps;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            auto e = epsilon_weight(a.basis(i).wcoords, 4);
            if (f == Family::S) {
                ASSERT_TRUE(e.has_value());
                if (!oracle::is_zero(*e)) eps.insert(*e);
            }
        }
        if (f == Family::S) EXPECT_EQ(eps, s_eps);
        // projection onto the x_i∂_i - x_{i+1}∂_{i+1} torus
        std::set<WeightVec> proj;
        for (const auto& v : s_eps) proj.insert({v[0] - v[1], v[1] - v[2], v[2] - v[3]});
        EXPECT_EQ(realized_roots(a), proj);
    }

    EXPECT_EQ(realized_roots(build({Family::H, 5})), oracle::h_roots(5));
    EXPECT_EQ(realized_roots(build({Family::H, 6})), oracle::h_roots(6));
}

TEST(Families, WeightsMatchRecomputedCartanAction) {
    for (FamilySpec s : {FamilySpec{Family::W, 4}, FamilySpec{Family::Stilde, 4}, FamilySpec{Family::H, 5}}) {
        AlgebraModel a = build(s);
        CartanAndRoots cr = cartan_and_roots(a);
        ASSERT_EQ(cr.weights.size(), a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_EQ(cr.weights[i], a.weight(i));
    }
}

TEST(FamiliesProperty, StructureConstantsMatchWBracket) {
    std::mt19937_64 rng(41);
    for (FamilySpec s : {FamilySpec{Family::S, 4}, FamilySpec{Family::Stilde, 4}, FamilySpec{Family::H, 5}}) {
        AlgebraModel a = build(s);
        const WBasis& wb = WBasis::get(s.n);
        for (int it = 0; it < 300; ++it) {
            const auto i = static_cast<std::uint32_t>(rng() % a.dim()), j = static_cast<std::uint32_t>(rng() % a.dim());
            EXPECT_EQ(a.to_wcoords(a.bracket_basis(i, j)), wb.bracket(a.basis(i).wcoords, a.basis(j).wcoords));
        }
    }
}

TEST(FamiliesProperty, BuildIsDeterministicAndPassesAxioms) {
    for (FamilySpec s : {FamilySpec{Family::S, 4}, FamilySpec{Family::Stilde, 4}, FamilySpec{Family::W, 5}}) {
        AlgebraModel a = build(s);
        EXPECT_EQ(a, build(s));
        EXPECT_TRUE(check_axioms(a).ok) << family_name(s.family);
    }
}
