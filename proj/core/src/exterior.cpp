#include "cartansuper/exterior.hpp"

#include <stdexcept>

#include "cartansuper/errors.hpp"

namespace cartansuper {

Monomial Monomial::var(int i) {
    if (i < 1 || i > kMaxGenerators) {
        throw IndexOutOfRange("Monomial::var: index " + std::to_string(i) + " out of range");
    }
    return Monomial{std::uint64_t{1} << (i - 1)};
}

Monomial Monomial::top(int n) {
    if (n < 0 || n > kMaxGenerators) {
        throw IndexOutOfRange("Monomial::top: n out of range");
    }
    return Monomial{n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
}

std::string Monomial::str() const {
    if (bits == 0) {
        return "1";
    }
    std::string out;
    for (int i = 1; i <= kMaxGenerators; ++i) {
        if (contains(i)) {
            out += 'x';
            out += std::to_string(i);
        }
    }
    return out;
}

Monomial Monomial::parse(std::string_view text) {
    if (text == "1") {
        return {};
    }
    Monomial m;
    std::size_t pos = 0;
    int last = 0;
    if (text.empty()) {
        throw ParseError("empty monomial");
    }
    while (pos < text.size()) {
        if (text[pos] != 'x') {
            throw ParseError("bad monomial '" + std::string(text) + "'");
        }
        ++pos;
        int idx = 0;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            idx = idx * 10 + (text[pos] - '0');
            ++pos;
            if (idx > kMaxGenerators) {
                throw ParseError("monomial index too large in '" + std::string(text) + "'");
            }
        }
        if (pos == start || idx < 1 || idx <= last) {
            throw ParseError("monomial indices must be ascending and positive: '" +
                             std::string(text) + "'");
        }
        last = idx;
        m.bits |= std::uint64_t{1} << (idx - 1);
    }
    return m;
}

SignedMonomial mono_mul(Monomial a, Monomial b) {
    if ((a.bits & b.bits) != 0) {
        return {0, {}};
    }
    // Each generator of b must move left past every larger generator of a.
    int inversions = 0;
    std::uint64_t rest = b.bits;
    while (rest != 0) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        std::uint64_t above = j >= 63 ? 0 : (a.bits >> (j + 1));
        inversions += std::popcount(above);
    }
    return {(inversions & 1) ? -1 : 1, Monomial{a.bits | b.bits}};
}

SignedMonomial mono_partial(int i, Monomial m) {
    if (!m.contains(i)) {
        return {0, {}};
    }
    std::uint64_t below = m.bits & ((std::uint64_t{1} << (i - 1)) - 1);
    int sign = (std::popcount(below) & 1) ? -1 : 1;
    return {sign, Monomial{m.bits & ~(std::uint64_t{1} << (i - 1))}};
}

ExtElem::ExtElem(int n) : n_(n) {
    if (n < 0 || n > kMaxGenerators) {
        throw IndexOutOfRange("ExtElem: n out of range");
    }
}

ExtElem::ExtElem(int n, Monomial m, Rational coeff) : ExtElem(n) {
    if (n < 64 && (m.bits >> n) != 0) {
        throw IndexOutOfRange("ExtElem: monomial uses a generator beyond n");
    }
    add(m, coeff);
}

Rational ExtElem::coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ExtElem::add(Monomial m, const Rational& c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

int ExtElem::parity() const {
    int p = -2;
    for (const auto& [m, c] : terms_) {
        if (p == -2) {
            p = m.parity();
        } else if (p != m.parity()) {
            return -1;
        }
    }
    return p == -2 ? 0 : p;
}

int ExtElem::degree() const {
    int d = -2;
    for (const auto& [m, c] : terms_) {
        if (d == -2) {
            d = m.degree();
        } else if (d != m.degree()) {
            return -1;
        }
    }
    return d == -2 ? 0 : d;
}

std::string ExtElem::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        if (!mag.is_one() || m.bits == 0) {
            out += mag.str();
            if (m.bits != 0) out += "*";
        }
        if (m.bits != 0) out += m.str();
        first = false;
    }
    return out;
}

ExtElem& ExtElem::operator+=(const ExtElem& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, c);
    return *this;
}

ExtElem& ExtElem::operator-=(const ExtElem& rhs) {
    for (const auto& [m, c] : rhs.terms_) add(m, -c);
    return *this;
}

ExtElem operator*(const Rational& c, const ExtElem& f) {
    ExtElem out(f.n_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : f.terms_) out.terms_.emplace(m, c * v);
    return out;
}

ExtElem ext_mul(const ExtElem& f, const ExtElem& g) {
    if (f.n() != g.n()) {
        throw DimensionMismatch("ext_mul: operands live in different Λ(n)");
    }
    ExtElem out(f.n());
    for (const auto& [a, ca] : f.terms()) {
        for (const auto& [b, cb] : g.terms()) {
            auto [sign, m] = mono_mul(a, b);
            if (sign != 0) {
                out.add(m, sign > 0 ? ca * cb : -(ca * cb));
            }
        }
    }
    return out;
}

ExtElem partial(int i, const ExtElem& f) {
    if (i < 1 || i > f.n()) {
        throw IndexOutOfRange("partial: index " + std::to_string(i) + " outside 1.." +
                              std::to_string(f.n()));
    }
    ExtElem out(f.n());
    for (const auto& [m, c] : f.terms()) {
        auto [sign, rest] = mono_partial(i, m);
        if (sign != 0) {
            out.add(rest, sign > 0 ? c : -c);
        }
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

}  // namespace cartansuper
