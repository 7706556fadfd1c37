#include "cartansuper/families.hpp"

#include <algorithm>

#include "cartansuper/errors.hpp"
#include "cartansuper/linalg.hpp"
#include "cartansuper/vector_fields.hpp"

namespace cartansuper {

namespace {

constexpr int kMaxBuildN = 12;

BasisDesc describe(const SparseVec& w, int n) {
    BasisDesc d;
    d.wcoords = w;
    if (w.size() == 1 && w.front().value.is_one()) {
        const WBasis& wb = WBasis::get(n);
        d.kind = BasisKind::VectorField;
        d.mono = wb.mono(w.front().index);
        d.direction = wb.direction(w.front().index);
    } else {
        d.kind = BasisKind::Combination;
    }
    return d;
}

BasisDesc ham_desc(Monomial f, int n) {
    BasisDesc d;
    d.kind = BasisKind::Ham;
    d.mono = f;
    d.wcoords = ham(ExtElem(n, f));
    return d;
}

BasisDesc grading_desc(int n) {
    BasisDesc d;
    d.kind = BasisKind::Grading;
    d.wcoords = grading_element(n);
    return d;
}

// Kernel of the divergence map over the W coordinates: S(n), echelonized.
std::vector<SparseVec> special_basis(int n) {
    const WBasis& wb = WBasis::get(n);
    const std::size_t rows = std::size_t{1} << n;
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> terms(rows);
    for (std::uint32_t idx = 0; idx < wb.size(); ++idx) {
        auto [sign, m] = mono_partial(wb.direction(idx), wb.mono(idx));
        if (sign != 0) terms[m.bits].emplace_back(idx, Rational(sign));
    }
    std::vector<SparseVec> div_rows;
    div_rows.reserve(rows);
    for (auto& t : terms) div_rows.push_back(SparseVec::from_terms(std::move(t)));
    Subspace ker = kernel(Matrix::from_rows(wb.size(), std::move(div_rows)));
    return ker.basis();
}

std::vector<BasisDesc> basis_for(Family family, int n) {
    const WBasis& wb = WBasis::get(n);
    std::vector<BasisDesc> out;
    switch (family) {
        case Family::W:
            for (std::uint32_t idx = 0; idx < wb.size(); ++idx) {
                out.push_back(describe(SparseVec::unit(idx), n));
            }
            break;
        case Family::S:
            for (const auto& v : special_basis(n)) out.push_back(describe(v, n));
            break;
        case Family::Stilde:
            for (const auto& v : special_basis(n)) {
                BasisDesc d = describe(v, n);
                if (d.kind == BasisKind::VectorField && d.mono.bits == 0) {
                    // degree -1: ∂_k becomes ∂_k - ξ_k
                    d = describe(v - xi(d.direction, n), n);
                }
                out.push_back(std::move(d));
            }
            break;
        case Family::H:
        case Family::Htilde: {
            const int top_deg = family == Family::H ? n - 1 : n;
            std::vector<Monomial> monos;
            for (std::uint64_t b = 1; b < (std::uint64_t{1} << n); ++b) monos.push_back(Monomial{b});
            std::stable_sort(monos.begin(), monos.end(), [](Monomial a, Monomial b) {
                return a.degree() != b.degree() ? a.degree() < b.degree() : a.bits < b.bits;
            });
            for (Monomial m : monos) {
                if (m.degree() >= 1 && m.degree() <= top_deg) out.push_back(ham_desc(m, n));
            }
            break;
        }
        case Family::Extended:
            throw FamilyConstraintError("Extended models are produced by build_lprime");
    }
    return out;
}

}  // namespace

void FamilySpec::validate() const {
    const std::string nstr = std::to_string(n);
    switch (family) {
        case Family::W:
        case Family::S:
            if (n < 4) throw FamilyConstraintError(family_name(family) + " requires n >= 4 (got " + nstr + ")");
            break;
        case Family::Stilde:
            if (n % 2 != 0) throw FamilyConstraintError("S̃ requires even n (got " + nstr + ")");
            if (n < 4) throw FamilyConstraintError("S̃ requires n >= 4 (got " + nstr + ")");
            break;
        case Family::H:
            if (n <= 4) throw FamilyConstraintError("H requires n > 4 (got " + nstr + ")");
            break;
        case Family::Htilde:
        case Family::Extended:
            throw FamilyConstraintError("family must be one of W, S, Stilde, H");
    }
    if (n > kMaxBuildN) {
        throw FamilyConstraintError("n must be at most " + std::to_string(kMaxBuildN) + " (got " + nstr + ")");
    }
}

int involution(int i, int n) {
    if (i < 1 || i > n) {
        throw IndexOutOfRange("involution: index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    const int r = n / 2;
    if (i <= r) return i + r;
    if (i <= 2 * r) return i - r;
    return i;
}

SparseVec xi(int i, int n) {
    if (i < 1 || i > n) {
        throw IndexOutOfRange("xi: index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    return SparseVec::unit(WBasis::get(n).index(Monomial::top(n), i));
}

SparseVec grading_element(int n) {
    const WBasis& wb = WBasis::get(n);
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (int i = 1; i <= n; ++i) terms.emplace_back(wb.index(Monomial::var(i), i), Rational(1));
    return SparseVec::from_terms(std::move(terms));
}

ExtElem divergence(const SparseVec& wcoords, int n) {
    const WBasis& wb = WBasis::get(n);
    ExtElem out(n);
    for (const auto& e : wcoords) {
        auto [sign, m] = mono_partial(wb.direction(e.index), wb.mono(e.index));
        if (sign != 0) out.add(m, sign > 0 ? e.value : -e.value);
    }
    return out;
}

SparseVec ham(const ExtElem& f) {
    const int p = f.parity();
    if (p < 0) {
        throw ParityError("ham: argument must be parity-homogeneous, got " + f.str());
    }
    const int n = f.n();
    const WBasis& wb = WBasis::get(n);
    SparseVec out;
    for (int i = 1; i <= n; ++i) {
        out += wb.field(partial(i, f), involution(i, n));
    }
    if (p == 1) out.scale(Rational(-1));
    return out;
}

std::vector<SparseVec> standard_cartan_w(Family family, int n) {
    const WBasis& wb = WBasis::get(n);
    auto diag = [&](int i) { return SparseVec::unit(wb.index(Monomial::var(i), i)); };
    std::vector<SparseVec> hs;
    switch (family) {
        case Family::W:
            for (int i = 1; i <= n; ++i) hs.push_back(diag(i));
            break;
        case Family::S:
        case Family::Stilde:
            for (int i = 1; i < n; ++i) hs.push_back(diag(i) - diag(i + 1));
            break;
        case Family::H:
        case Family::Htilde:
            for (int i = 1; i <= n / 2; ++i) hs.push_back(diag(i) - diag(involution(i, n)));
            break;
        case Family::Extended:
            throw FamilyConstraintError("standard_cartan_w: Extended has no standard torus of its own");
    }
    return hs;
}

std::optional<std::vector<int>> epsilon_weight(const SparseVec& wcoords, int n) {
    const WBasis& wb = WBasis::get(n);
    std::optional<std::vector<int>> w;
    for (const auto& e : wcoords) {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        Monomial f = wb.mono(e.index);
        for (int i = 1; i <= n; ++i) {
            if (f.contains(i)) v[static_cast<std::size_t>(i - 1)] += 1;
        }
        v[static_cast<std::size_t>(wb.direction(e.index) - 1)] -= 1;
        if (!w) {
            w = std::move(v);
        } else if (*w != v) {
            return std::nullopt;
        }
    }
    if (!w) w = std::vector<int>(static_cast<std::size_t>(n), 0);
    return w;
}

AlgebraModel make_model(Family family, int n, std::vector<BasisDesc> basis,
                        const std::vector<SparseVec>& cartan_w, int grading_modulus) {
    const WBasis& wb = WBasis::get(n);
    const std::size_t d = basis.size();
    std::vector<SparseVec> wvecs;
    wvecs.reserve(d);
    for (const auto& b : basis) wvecs.push_back(b.wcoords);
    CoordinateSolver solver(wb.size(), wvecs);

    auto norm = [&](int deg) {
        if (grading_modulus == 0) return deg;
        return (((deg + 1) % grading_modulus) + grading_modulus) % grading_modulus - 1;
    };

    AlgebraModel::Parts parts;
    parts.family = family;
    parts.n = n;
    parts.grading_modulus = grading_modulus;
    parts.parity.resize(d);
    parts.degree.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        const SparseVec& w = wvecs[i];
        if (w.empty()) throw StructureError("make_model: zero basis vector");
        int par = wb.parity(w.front().index);
        int deg = norm(wb.degree(w.front().index));
        for (const auto& e : w) {
            if (wb.parity(e.index) != par || norm(wb.degree(e.index)) != deg) {
                throw StructureError("make_model: basis vector " + basis[i].label(n) +
                                     " is not homogeneous");
            }
        }
        parts.parity[i] = par;
        parts.degree[i] = deg;
    }

    parts.bracket = BracketTable(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            SparseVec w = wb.bracket(wvecs[i], wvecs[j]);
            if (w.empty()) continue;
            auto c = solver.coords(w);
            if (!c) {
                throw StructureError("make_model: [" + basis[i].label(n) + ", " + basis[j].label(n) +
                                     "] leaves the span");
            }
            parts.bracket.set(i, j, std::move(*c));
        }
    }

    for (const auto& h : cartan_w) {
        auto c = solver.coords(h);
        if (!c) throw StructureError("make_model: Cartan element outside the algebra");
        parts.cartan_elements.push_back(std::move(*c));
    }

    parts.weight.assign(d, WeightVec(cartan_w.size(), 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < cartan_w.size(); ++k) {
            SparseVec img = wb.bracket(cartan_w[k], wvecs[i]);
            const Rational lambda = img.empty() ? Rational(0) : img.front().value / wvecs[i].front().value;
            SparseVec expect = wvecs[i];
            expect.scale(lambda);
            std::int64_t li = 0;
            if (img != expect || !lambda.to_int64(li)) {
                throw StructureError("make_model: " + basis[i].label(n) + " is not a weight vector");
            }
            parts.weight[i][k] = static_cast<int>(li);
        }
    }

    // Basis vectors lying in H_L = span{h_k}.
    if (!cartan_w.empty()) {
        Subspace torus(wb.size(), cartan_w);
        for (std::size_t i = 0; i < d; ++i) {
            if (member(torus, wvecs[i])) parts.cartan.push_back(i);
        }
    }

    parts.basis = std::move(basis);
    return AlgebraModel(std::move(parts));
}

std::optional<SuperVec> model_coords(const AlgebraModel& a, const SparseVec& wcoords) {
    std::vector<SparseVec> wvecs;
    wvecs.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) wvecs.push_back(a.basis(i).wcoords);
    CoordinateSolver solver(WBasis::get(a.n()).size(), wvecs);
    return solver.coords(wcoords);
}

AlgebraModel build(const FamilySpec& spec) {
    spec.validate();
    const int modulus = spec.family == Family::Stilde ? spec.n : 0;
    return make_model(spec.family, spec.n, basis_for(spec.family, spec.n),
                      standard_cartan_w(spec.family, spec.n), modulus);
}

LPrimeModel build_lprime(const AlgebraModel& a) {
    const int n = a.n();
    std::vector<SparseVec> cartan_w;
    for (const auto& h : a.cartan_elements()) cartan_w.push_back(a.to_wcoords(h));

    std::vector<BasisDesc> extra;
    switch (a.family()) {
        case Family::W:
        case Family::Stilde:
            return LPrimeModel{a, a, {}};
        case Family::S:
            extra.push_back(grading_desc(n));
            break;
        case Family::H:
            extra.push_back(ham_desc(Monomial::top(n), n));
            extra.push_back(grading_desc(n));
            break;
        default:
            throw FamilyConstraintError("build_lprime: expected a model built from W, S, Stilde or H");
    }
    std::vector<BasisDesc> basis = a.parts().basis;
    std::vector<std::string> labels;
    for (auto& e : extra) {
        labels.push_back(e.label(n));
        basis.push_back(std::move(e));
    }
    AlgebraModel ext = make_model(Family::Extended, n, std::move(basis), cartan_w, a.grading_modulus());
    return LPrimeModel{a, std::move(ext), std::move(labels)};
}

CartanAndRoots cartan_and_roots(const AlgebraModel& a) {
    CartanAndRoots out;
    out.cartan = a.cartan_elements();
    out.weights.assign(a.dim(), WeightVec(out.cartan.size(), 0));
    for (std::size_t c = 0; c < a.dim(); ++c) {
        SuperVec e = SparseVec::unit(static_cast<std::uint32_t>(c));
        for (std::size_t k = 0; k < out.cartan.size(); ++k) {
            SuperVec img = a.bracket(out.cartan[k], e);
            Rational lambda = img.at(static_cast<std::uint32_t>(c));
            SuperVec expect = lambda * e;
            std::int64_t li = 0;
            if (img != expect || !lambda.to_int64(li)) {
                throw StructureError("cartan_and_roots: basis vector " + std::to_string(c) +
                                     " is not a weight vector");
            }
            out.weights[c][k] = static_cast<int>(li);
        }
    }
    return out;
}

}  // namespace cartansuper
