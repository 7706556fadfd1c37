#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "cartansuper/rational.hpp"

namespace cartansuper {

/// Largest supported number of Grassmann generators.
inline constexpr int kMaxGenerators = 63;

/// Grassmann monomial x_{i1} x_{i2} ... with i1 < i2 < ..., stored as a
/// bitmask (bit i-1 set for x_i). Signs are always computed against the
/// ascending order.
struct Monomial {
    std::uint64_t bits = 0;

    static Monomial one() { return {}; }
    /// x_i, 1-based.
    static Monomial var(int i);
    /// x_1 x_2 ... x_n
    static Monomial top(int n);

    [[nodiscard]] int degree() const { return std::popcount(bits); }
    [[nodiscard]] int parity() const { return degree() & 1; }
    [[nodiscard]] bool contains(int i) const { return (bits >> (i - 1)) & 1U; }

    /// "x1x3x4"; "1" for the empty monomial.
    [[nodiscard]] std::string str() const;
    /// Inverse of str(); throws ParseError.
    static Monomial parse(std::string_view text);

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Product of monomials: sign is 0 when the index sets meet.
struct SignedMonomial {
    int sign;
    Monomial mono;
};

[[nodiscard]] SignedMonomial mono_mul(Monomial a, Monomial b);

/// Partial superderivative of a monomial: {sign, mono}, sign 0 if x_i absent.
[[nodiscard]] SignedMonomial mono_partial(int i, Monomial m);

/// Element of the exterior algebra Λ(n).
class ExtElem {
public:
    explicit ExtElem(int n = 0);
    ExtElem(int n, Monomial m, Rational coeff = Rational(1));

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] Rational coeff(Monomial m) const;

    void add(Monomial m, const Rational& c);

    /// Parity if every term has the same parity, -1 otherwise (0 counts as even).
    [[nodiscard]] int parity() const;
    /// Z-degree if homogeneous, -1 otherwise.
    [[nodiscard]] int degree() const;

    [[nodiscard]] std::string str() const;

    ExtElem& operator+=(const ExtElem& rhs);
    ExtElem& operator-=(const ExtElem& rhs);
    friend ExtElem operator+(ExtElem a, const ExtElem& b) { return a += b; }
    friend ExtElem operator-(ExtElem a, const ExtElem& b) { return a -= b; }
    friend ExtElem operator*(const Rational& c, const ExtElem& f);
    friend bool operator==(const ExtElem&, const ExtElem&) = default;

private:
    int n_;
    std::map<Monomial, Rational> terms_;
};

/// Bilinear extension of mono_mul.
[[nodiscard]] ExtElem ext_mul(const ExtElem& f, const ExtElem& g);

/// ∂_i f: the odd superderivation with ∂_i(x_j) = δ_ij. 1 <= i <= n.
[[nodiscard]] ExtElem partial(int i, const ExtElem& f);

/// dim Λ(n)_k = C(n, k) -- helper used by grading code.
[[nodiscard]] std::uint64_t binomial(int n, int k);

}  // namespace cartansuper
