#include <gtest/gtest.h>

#include <random>

#include "cartansuper/errors.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/serialize.hpp"
#include "cartansuper/vector_fields.hpp"
#include "oracle.hpp"

using namespace cartansuper;

namespace {

const AlgebraModel& w4() {
    static const AlgebraModel a = build({Family::W, 4});
    return a;
}

std::size_t index_of(const AlgebraModel& a, const std::string& label) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.basis(i).label(a.n()) == label) return i;
    throw std::runtime_error("no basis vector " + label);
}

SuperVec e(const AlgebraModel& a, const std::string& label) {
    return SparseVec::unit(static_cast<std::uint32_t>(index_of(a, label)));
}

oracle::Field to_field(const SparseVec& v, const WBasis& wb) {
    oracle::Field f;
    for (const auto& t : v) f[{static_cast<std::uint32_t>(wb.mono(t.index).bits), wb.direction(t.index)}] = t.value.to_mpq();
    return f;
}

}  // namespace

TEST(WBasis, BracketExamples) {
    const AlgebraModel& a = w4();
    EXPECT_EQ(a.bracket(e(a, "d1"), e(a, "x1.d2")), e(a, "d2"));
    EXPECT_EQ(a.bracket(e(a, "x1.d1"), e(a, "x1.d2")), e(a, "x1.d2"));
    EXPECT_TRUE(a.bracket(e(a, "d1"), e(a, "d2")).empty());
}

TEST(WBasis, RenderParseRoundTrip) {
    const WBasis& wb = WBasis::get(4);
    for (const char* s : {"d1", "x1x2.d3", "-x1.d4 + x2.d3", "1/2*d2 + 2*x1.d1"}) {
        EXPECT_EQ(wb.render(wb.parse(s)), s);
    }
    // terms render in coordinate order
    EXPECT_EQ(wb.parse("x2.d3 - x1.d4"), wb.parse("-x1.d4 + x2.d3"));
    EXPECT_EQ(wb.parse("2*x1.d1 + 1/2*d2"), wb.parse("1/2*d2 + 2*x1.d1"));
    EXPECT_THROW((void)wb.parse("x1.d9"), ParseError);
    EXPECT_THROW((void)wb.parse("x1..d2"), ParseError);
}

TEST(WBasis, BracketMatchesOperatorOracle) {
    const int n = 4;
    const WBasis& wb = WBasis::get(n);
    for (std::uint32_t i = 0; i < wb.size(); ++i)
        for (std::uint32_t j = 0; j < wb.size(); ++j) {
            const auto expect = oracle::bracket({static_cast<std::uint32_t>(wb.mono(i).bits), wb.direction(i)},
                                                {static_cast<std::uint32_t>(wb.mono(j).bits), wb.direction(j)}, n);
            ASSERT_EQ(to_field(wb.bracket_basis(i, j), wb), expect) << wb.render(SparseVec::unit(i)) << ", "
                                                                     << wb.render(SparseVec::unit(j));
        }
}

TEST(AdMatrix, Examples) {
    const AlgebraModel& a = w4();
    EXPECT_TRUE(ad_matrix(a, SuperVec{}).is_zero());

    const std::size_t h1 = index_of(a, "x1.d1");
    Matrix m = ad_matrix(a, SparseVec::unit(static_cast<std::uint32_t>(h1)));
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            EXPECT_EQ(m.at(r, c), r == c ? Rational(a.weight(c)[0]) : Rational(0));

    // 𝒞 acting on S(4) inside S(4) ⊕ ℂ𝒞 is the degree operator.
    LPrimeModel p = build_lprime(build({Family::S, 4}));
    Matrix g = ad_matrix(p.ext, SparseVec::unit(static_cast<std::uint32_t>(p.dim_l())), p.dim_l());
    for (std::size_t c = 0; c < p.dim_l(); ++c) {
        SuperVec brute = p.ext.bracket_with(p.dim_l(), SparseVec::unit(static_cast<std::uint32_t>(c)));
        EXPECT_EQ(brute, Rational(p.base.degree(c)) * SparseVec::unit(static_cast<std::uint32_t>(c)));
        EXPECT_EQ(g.column(c), brute);
    }
}

TEST(Axioms, BuiltModelsPass) {
    EXPECT_TRUE(check_axioms(w4()).ok);
    EXPECT_TRUE(check_axioms(build({Family::H, 5})).ok);
}

TEST(Axioms, FaultInjectionIsCaught) {
    AlgebraModel a = w4();
    const std::size_t i = index_of(a, "d1"), j = index_of(a, "x1.d2");
    a.set_bracket(i, j, -a.bracket_basis(i, j));
    AxiomReport r = check_axioms(a);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_FALSE(r.failure.empty());
    const auto& t = *r.witness;
    EXPECT_TRUE(std::find(t.begin(), t.end(), i) != t.end() || std::find(t.begin(), t.end(), j) != t.end());
}

TEST(Axioms, SampledModeIsSeeded) {
    AxiomOptions o;
    o.sampled_triples = 500;
    o.seed = 3;
    AxiomReport r = check_axioms(w4(), o);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.triples_checked, 500u);
}

TEST(Bigrade, CellExamples) {
    const AlgebraModel& a = w4();
    auto cells = bigrade_blocks(a);
    EXPECT_EQ(cells.at(Cell{-1, {-1, 0, 0, 0}}), std::vector<std::size_t>{index_of(a, "d1")});
    std::vector<std::size_t> cartan;
    for (const char* s : {"x1.d1", "x2.d2", "x3.d3", "x4.d4"}) cartan.push_back(index_of(a, s));
    std::sort(cartan.begin(), cartan.end());
    EXPECT_EQ(cells.at(Cell{0, {0, 0, 0, 0}}), cartan);

    AlgebraModel h5 = build({Family::H, 5});
    EXPECT_EQ(bigrade_blocks(h5).at(Cell{0, {0, 0}}).size(), 2u);
}

TEST(SuperalgebraProperty, BracketIsSuperAntisymmetricOnRandomVectors) {
    const AlgebraModel& a = w4();
    std::mt19937_64 rng(31);
    for (int it = 0; it < 50; ++it) {
        // parity-homogeneous random vectors
        const int pa = static_cast<int>(rng() % 2), pb = static_cast<int>(rng() % 2);
        SuperVec x, y;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (rng() % 8 == 0 && a.parity(i) == pa) x.add_term(static_cast<std::uint32_t>(i), Rational(static_cast<std::int64_t>(1 + rng() % 3)));
            if (rng() % 8 == 0 && a.parity(i) == pb) y.add_term(static_cast<std::uint32_t>(i), Rational(static_cast<std::int64_t>(1 + rng() % 3)));
        }
        const Rational s((pa && pb) ? 1 : -1);
        EXPECT_EQ(a.bracket(x, y), s * a.bracket(y, x));
    }
}

TEST(Serialize, JsonRoundTripIsExact) {
    for (FamilySpec s : {FamilySpec{Family::W, 4}, FamilySpec{Family::Stilde, 4}, FamilySpec{Family::H, 5}}) {
        AlgebraModel a = build(s);
        EXPECT_EQ(model_from_json(model_to_json(a)), a);
        const std::string text = dump_model(a);
        EXPECT_EQ(parse_model(text), a);
        EXPECT_EQ(dump_model(parse_model(text)), text);
    }
    LPrimeModel p = build_lprime(build({Family::H, 5}));
    EXPECT_EQ(parse_model(dump_model(p.ext)), p.ext);
}

TEST(Serialize, DescriptorParsing) {
    BasisDesc d = parse_descriptor("x1x2.d3", 4);
    EXPECT_EQ(d.kind, BasisKind::VectorField);
    EXPECT_EQ(d.direction, 3);
    EXPECT_EQ(parse_descriptor("H(x1x2)", 5).kind, BasisKind::Ham);
    EXPECT_EQ(parse_descriptor("C", 4).kind, BasisKind::Grading);
    EXPECT_EQ(parse_descriptor("x2.d3 - x1.d4", 5).kind, BasisKind::Combination);
    EXPECT_THROW((void)parse_descriptor("H(x9)", 5), ParseError);
}

TEST(Serialize, MalformedInputIsRejected) {
    EXPECT_THROW((void)parse_model("{not json"), ParseError);
    EXPECT_THROW((void)parse_model("[]"), ParseError);
    nlohmann::json j = model_to_json(w4());
    j["schema_version"] = 99;
    EXPECT_THROW((void)model_from_json(j), ParseError);
    j = model_to_json(w4());
    j["parity"].erase(0);
    EXPECT_THROW((void)model_from_json(j), ParseError);
    j = model_to_json(w4());
    j["bracket"][0][2][0][1] = "1/0";
    EXPECT_THROW((void)model_from_json(j), ParseError);
    j = model_to_json(w4());
    j["bracket"][0][0] = 4096;
    EXPECT_THROW((void)model_from_json(j), ParseError);
}
