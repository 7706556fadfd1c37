#include <gtest/gtest.h>

#include <random>

#include "cartansuper/errors.hpp"
#include "cartansuper/exterior.hpp"
#include "oracle.hpp"

using namespace cartansuper;

namespace {

Monomial mono(std::initializer_list<int> idx) {
    Monomial m;
    for (int i : idx) m.bits |= Monomial::var(i).bits;
    return m;
}

ExtElem random_elem(std::mt19937_64& rng, int n) {
    ExtElem f(n);
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        m.bits = rng() & ((1ULL << n) - 1);
        f.add(m, Rational(static_cast<std::int64_t>(rng() % 5) - 2));
    }
    return f;
}

}  // namespace

TEST(Monomial, MultiplicationExamples) {
    auto p = mono_mul(mono({1}), mono({2}));
    EXPECT_EQ(p.sign, 1);
    EXPECT_EQ(p.mono, mono({1, 2}));
    p = mono_mul(mono({2}), mono({1}));
    EXPECT_EQ(p.sign, -1);
    EXPECT_EQ(p.mono, mono({1, 2}));
    EXPECT_EQ(mono_mul(mono({1}), mono({1})).sign, 0);
}

TEST(Monomial, PartialExamples) {
    auto d = mono_partial(1, mono({1, 2}));
    EXPECT_EQ(d.sign, 1);
    EXPECT_EQ(d.mono, mono({2}));
    d = mono_partial(2, mono({1, 2}));
    EXPECT_EQ(d.sign, -1);
    EXPECT_EQ(d.mono, mono({1}));
    EXPECT_EQ(mono_partial(3, mono({1, 2})).sign, 0);
}

TEST(Monomial, StrParse) {
    EXPECT_EQ(mono({1, 3, 4}).str(), "x1x3x4");
    EXPECT_EQ(Monomial::one().str(), "1");
    EXPECT_EQ(Monomial::parse("x1x3x4"), mono({1, 3, 4}));
    EXPECT_EQ(Monomial::parse("1"), Monomial::one());
    EXPECT_EQ(Monomial::top(4), mono({1, 2, 3, 4}));
    EXPECT_THROW((void)Monomial::parse("x2x1"), ParseError);
    EXPECT_THROW((void)Monomial::parse("y1"), ParseError);
}

TEST(ExtElem, ProductExamples) {
    const int n = 4;
    ExtElem one_plus_x1 = ExtElem(n, Monomial::one()) + ExtElem(n, mono({1}));
    EXPECT_EQ(ext_mul(one_plus_x1, ExtElem(n, mono({2}))), ExtElem(n, mono({2})) + ExtElem(n, mono({1, 2})));
    EXPECT_EQ(ext_mul(ExtElem(n, mono({1, 2})), ExtElem(n, mono({3, 4}))), ExtElem(n, mono({1, 2, 3, 4})));
    ExtElem f = ExtElem(n, mono({2, 3}), Rational(3)) - ExtElem(n, mono({4}));
    EXPECT_EQ(ext_mul(f, ExtElem(n, Monomial::one())), f);
}

TEST(ExtElem, ParityAndDegree) {
    ExtElem f = ExtElem(4, mono({1, 2})) + ExtElem(4, mono({3, 4}));
    EXPECT_EQ(f.parity(), 0);
    EXPECT_EQ(f.degree(), 2);
    ExtElem g = f + ExtElem(4, mono({1}));
    EXPECT_EQ(g.parity(), -1);
    EXPECT_EQ(g.degree(), -1);
    EXPECT_EQ(ExtElem(4).parity(), 0);
}

TEST(ExtElem, PartialRangeChecked) {
    EXPECT_THROW((void)partial(0, ExtElem(3, mono({1}))), IndexOutOfRange);
    EXPECT_THROW((void)partial(4, ExtElem(3, mono({1}))), IndexOutOfRange);
}

TEST(ExtElem, Binomial) {
    EXPECT_EQ(binomial(4, 2), 6u);
    EXPECT_EQ(binomial(5, 0), 1u);
    EXPECT_EQ(binomial(3, 4), 0u);
}

TEST(ExteriorProperty, SignsMatchOperatorOracle) {
    const int n = 5;
    for (std::uint32_t a = 0; a < 32; ++a)
        for (std::uint32_t b = 0; b < 32; ++b) {
            auto p = mono_mul(Monomial{a}, Monomial{b});
            EXPECT_EQ(p.sign, oracle::product_sign(a, b));
        }
    for (int i = 1; i <= n; ++i) {
        const auto op = oracle::partial_op(i, n);
        for (std::uint32_t g = 0; g < 32; ++g) {
            auto d = mono_partial(i, Monomial{g});
            for (std::uint32_t r = 0; r < 32; ++r) {
                const int expect = (d.sign != 0 && d.mono.bits == r) ? d.sign : 0;
                EXPECT_EQ(op[r][g], expect);
            }
        }
    }
}

TEST(ExteriorProperty, AssociativeAndSuperCommutative) {
    std::mt19937_64 rng(21);
    const int n = 5;
    for (int it = 0; it < 200; ++it) {
        ExtElem f = random_elem(rng, n), g = random_elem(rng, n), h = random_elem(rng, n);
        EXPECT_EQ(ext_mul(ext_mul(f, g), h), ext_mul(f, ext_mul(g, h)));
        Monomial a{rng() & 31}, b{rng() & 31};
        ExtElem ab = ext_mul(ExtElem(n, a), ExtElem(n, b));
        ExtElem ba = ext_mul(ExtElem(n, b), ExtElem(n, a));
        const int s = (a.parity() && b.parity()) ? -1 : 1;
        EXPECT_EQ(ab, Rational(s) * ba);
    }
}

TEST(ExteriorProperty, PartialIsOddSuperderivation) {
    std::mt19937_64 rng(22);
    const int n = 5;
    for (int it = 0; it < 200; ++it) {
        Monomial a{rng() & 31};
        ExtElem f(n, a), g = random_elem(rng, n);
        const int i = 1 + static_cast<int>(rng() % n);
        ExtElem lhs = partial(i, ext_mul(f, g));
        ExtElem rhs = ext_mul(partial(i, f), g) + Rational(a.parity() ? -1 : 1) * ext_mul(f, partial(i, g));
        EXPECT_EQ(lhs, rhs);
        EXPECT_TRUE(partial(i, partial(i, g)).is_zero());
    }
}
