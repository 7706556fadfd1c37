#include "cartansuper/vector_fields.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "cartansuper/errors.hpp"

namespace cartansuper {

namespace {

constexpr int kMaxFieldGenerators = 16;

}  // namespace

WBasis::WBasis(int n) : n_(n) {
    if (n < 1 || n > kMaxFieldGenerators) {
        throw IndexOutOfRange("WBasis: n must lie in 1.." + std::to_string(kMaxFieldGenerators));
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Monomial> all;
    all.reserve(count);
    for (std::uint64_t b = 0; b < count; ++b) all.push_back(Monomial{b});
    std::stable_sort(all.begin(), all.end(), [](Monomial a, Monomial b) {
        return a.degree() != b.degree() ? a.degree() < b.degree() : a.bits < b.bits;
    });
    lookup_.assign(count * static_cast<std::uint64_t>(n), 0);
    for (Monomial f : all) {
        for (int j = 1; j <= n; ++j) {
            lookup_[f.bits * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(j - 1)] =
                static_cast<std::uint32_t>(monos_.size());
            monos_.push_back(f);
            dirs_.push_back(j);
        }
    }
}

const WBasis& WBasis::get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<WBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<WBasis>(n);
    }
    return *slot;
}

std::uint32_t WBasis::index(Monomial f, int j) const {
    if (j < 1 || j > n_ || (f.bits >> n_) != 0) {
        throw IndexOutOfRange("WBasis::index: (" + f.str() + ", " + std::to_string(j) +
                              ") outside W(" + std::to_string(n_) + ")");
    }
    return lookup_[f.bits * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(j - 1)];
}

SparseVec WBasis::field(const ExtElem& f, int j) const {
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (const auto& [m, c] : f.terms()) terms.emplace_back(index(m, j), c);
    return SparseVec::from_terms(std::move(terms));
}

ExtElem WBasis::coefficient(const SparseVec& v, int j) const {
    ExtElem f(n_);
    for (const auto& e : v) {
        if (dirs_.at(e.index) == j) f.add(monos_[e.index], e.value);
    }
    return f;
}

SparseVec WBasis::bracket_basis(std::uint32_t a, std::uint32_t b) const {
    // [f∂_i, g∂_j] = f ∂_i(g) ∂_j - (-1)^{|f∂_i||g∂_j|} g ∂_j(f) ∂_i
    const Monomial f = monos_.at(a);
    const Monomial g = monos_.at(b);
    const int i = dirs_[a];
    const int j = dirs_[b];
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    if (auto dg = mono_partial(i, g); dg.sign != 0) {
        auto prod = mono_mul(f, dg.mono);
        if (prod.sign != 0) {
            terms.emplace_back(index(prod.mono, j), Rational(dg.sign * prod.sign));
        }
    }
    if (auto df = mono_partial(j, f); df.sign != 0) {
        auto prod = mono_mul(g, df.mono);
        if (prod.sign != 0) {
            int swap = (parity(a) & parity(b)) ? -1 : 1;
            terms.emplace_back(index(prod.mono, i), Rational(-swap * df.sign * prod.sign));
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

SparseVec WBasis::bracket(const SparseVec& a, const SparseVec& b) const {
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (const auto& ea : a) {
        for (const auto& eb : b) {
            SparseVec t = bracket_basis(ea.index, eb.index);
            if (t.empty()) continue;
            Rational c = ea.value * eb.value;
            for (const auto& et : t) terms.emplace_back(et.index, c * et.value);
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

ExtElem WBasis::apply(const SparseVec& v, const ExtElem& f) const {
    ExtElem out(n_);
    for (const auto& e : v) {
        ExtElem df = partial(dirs_.at(e.index), f);
        out += e.value * ext_mul(ExtElem(n_, monos_[e.index]), df);
    }
    return out;
}

std::string WBasis::render(const SparseVec& v) const {
    if (v.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& e : v) {
        const bool neg = e.value.sign() < 0;
        Rational mag = neg ? -e.value : e.value;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (!mag.is_one()) {
            out += mag.str();
            out += "*";
        }
        Monomial f = monos_.at(e.index);
        if (f.bits != 0) {
            out += f.str();
            out += ".";
        }
        out += "d" + std::to_string(dirs_[e.index]);
        first = false;
    }
    return out;
}

SparseVec WBasis::parse(std::string_view text) const {
    std::string s;
    for (char c : text) {
        if (c != ' ') s += c;
    }
    if (s.empty()) {
        throw ParseError("empty vector-field expression");
    }
    if (s == "0") {
        return {};
    }
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError("expected '+' or '-' in '" + s + "'");
        }
        std::size_t end = s.find_first_of("+-", pos);
        std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        Rational coeff(1);
        if (auto star = term.find('*'); star != std::string::npos) {
            try {
                coeff = Rational::parse(term.substr(0, star));
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("bad coefficient: ") + e.what());
            }
            term = term.substr(star + 1);
        }
        Monomial f;
        std::string dir;
        if (auto dot = term.find(".d"); dot != std::string::npos) {
            f = Monomial::parse(term.substr(0, dot));
            dir = term.substr(dot + 2);
        } else if (!term.empty() && term[0] == 'd') {
            dir = term.substr(1);
        } else {
            throw ParseError("bad vector-field term '" + term + "'");
        }
        if (dir.empty() || !std::all_of(dir.begin(), dir.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            dir.size() > 3) {
            throw ParseError("bad direction in term '" + term + "'");
        }
        int j = std::stoi(dir);
        if (j < 1 || j > n_ || (f.bits >> n_) != 0) {
            throw ParseError("term '" + term + "' outside W(" + std::to_string(n_) + ")");
        }
        terms.emplace_back(index(f, j), sign > 0 ? coeff : -coeff);
    }
    return SparseVec::from_terms(std::move(terms));
}

}  // namespace cartansuper
