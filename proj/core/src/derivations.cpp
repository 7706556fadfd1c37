#include "cartansuper/derivations.hpp"

#include <algorithm>
#include <map>

#include "cartansuper/errors.hpp"
#include "cartansuper/parallel.hpp"

namespace cartansuper {

MapParity map_parity(const Matrix& m, const AlgebraModel& a) {
    if (m.rows() != a.dim() || m.cols() != a.dim()) {
        throw DimensionMismatch("map_parity: matrix is not dim(L) x dim(L)");
    }
    int p = -1;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto& e : m.row(r)) {
            int q = (a.parity(r) + a.parity(e.index)) & 1;
            if (p < 0) {
                p = q;
            } else if (p != q) {
                return MapParity::Mixed;
            }
        }
    }
    return p == 1 ? MapParity::Odd : MapParity::Even;
}

EndMap EndMap::of(Matrix m, const AlgebraModel& a) {
    MapParity p = map_parity(m, a);
    return EndMap{std::move(m), p};
}

EndBlocks::EndBlocks(const AlgebraModel& a) : dim_(a.dim()) {
    struct Key {
        Cell shift;
        int parity;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, std::vector<std::pair<std::uint32_t, std::uint32_t>>> groups;
    std::vector<Cell> cells(dim_);
    for (std::size_t i = 0; i < dim_; ++i) cells[i] = a.cell(i);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Key k{{a.normalize_degree(cells[r].degree - cells[c].degree), cells[r].weight - cells[c].weight},
                  (a.parity(r) + a.parity(c)) & 1};
            groups[k].emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
        }
    }
    block_of_.assign(dim_ * dim_, 0);
    local_of_.assign(dim_ * dim_, 0);
    for (auto& [key, unknowns] : groups) {
        const auto b = static_cast<std::uint32_t>(blocks_.size());
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            auto [r, c] = unknowns[k];
            block_of_[r * dim_ + c] = b;
            local_of_[r * dim_ + c] = static_cast<std::uint32_t>(k);
        }
        blocks_.push_back(Block{key.shift, key.parity, std::move(unknowns)});
    }
}

std::int64_t EndBlocks::find(const Cell& shift, int parity) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].parity == parity && blocks_[b].shift == shift) return static_cast<std::int64_t>(b);
    }
    return -1;
}

SparseVec EndBlocks::restrict_flat(const SparseVec& flat, std::size_t b) const {
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (const auto& e : flat) {
        if (e.index >= dim_ * dim_) throw IndexOutOfRange("EndBlocks::restrict_flat: index outside End(L)");
        if (block_of_[e.index] == b) terms.emplace_back(local_of_[e.index], e.value);
    }
    return SparseVec::from_terms(std::move(terms));
}

SparseVec EndBlocks::lift(const SparseVec& local, std::size_t b) const {
    const auto& unk = blocks_.at(b).unknowns;
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    terms.reserve(local.size());
    for (const auto& e : local) {
        auto [r, c] = unk.at(e.index);
        terms.emplace_back(static_cast<std::uint32_t>(r * dim_ + c), e.value);
    }
    return SparseVec::from_terms(std::move(terms));
}

bool is_superderivation(const EndMap& d, const AlgebraModel& a) {
    if (d.parity == MapParity::Mixed) {
        throw ParityError("is_superderivation: map has mixed parity");
    }
    const std::size_t n = a.dim();
    if (d.matrix.rows() != n || d.matrix.cols() != n) {
        throw DimensionMismatch("is_superderivation: matrix is not dim(L) x dim(L)");
    }
    const int dp = d.parity == MapParity::Odd ? 1 : 0;
    const Matrix cols = d.matrix.transpose();  // row c = D(e_c)
    for (std::size_t i = 0; i < n; ++i) {
        const SparseVec& di = cols.row(i);
        for (std::size_t j = i; j < n; ++j) {
            SparseVec lhs = d.matrix.apply(a.bracket_basis(i, j));
            SparseVec rhs;
            for (const auto& e : di) rhs.axpy(e.value, a.bracket_basis(e.index, j));
            SuperVec second = a.bracket_with(i, cols.row(j));
            rhs.axpy(Rational((dp & a.parity(i)) ? -1 : 1), second);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

namespace {

bool selected(ParitySelect sel, int parity) {
    return sel == ParitySelect::Both || (sel == ParitySelect::Even) == (parity == 0);
}

using Terms = std::vector<std::pair<std::uint32_t, Rational>>;

// Leibniz equations for the pair (i, j): one equation per output coordinate k,
// over flattened unknowns r*dim + c. eq must hold dim empty vectors.
void leibniz_equations(const AlgebraModel& a, std::size_t i, std::size_t j, std::vector<Terms>& eq) {
    const std::size_t d = a.dim();
    const auto idx = [d](std::size_t r, std::size_t c) { return static_cast<std::uint32_t>(r * d + c); };
    // D[e_i, e_j]
    for (const auto& e : a.bracket_basis(i, j)) {
        for (std::size_t k = 0; k < d; ++k) eq[k].emplace_back(idx(k, e.index), e.value);
    }
    // - [D e_i, e_j]
    for (std::size_t r = 0; r < d; ++r) {
        for (const auto& e : a.bracket_basis(r, j)) eq[e.index].emplace_back(idx(r, i), -e.value);
    }
    // - (-1)^{|D||e_i|} [e_i, D e_j], |D| = p_r + p_j for the unknown (r, j)
    for (std::size_t r = 0; r < d; ++r) {
        const int dp = (a.parity(r) + a.parity(j)) & 1;
        const bool flip = (dp & a.parity(i)) != 0;
        for (const auto& e : a.bracket_basis(i, r)) {
            eq[e.index].emplace_back(idx(r, j), flip ? e.value : -e.value);
        }
    }
}

}  // namespace

Subspace derivation_space(const AlgebraModel& a, ParitySelect parity, unsigned jobs) {
    const std::size_t d = a.dim();
    const EndBlocks blocks(a);
    std::vector<std::vector<SparseVec>> equations(blocks.count());
    std::vector<Terms> eq(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            for (auto& t : eq) t.clear();
            leibniz_equations(a, i, j, eq);
            for (std::size_t k = 0; k < d; ++k) {
                if (eq[k].empty()) continue;
                const std::uint32_t first = eq[k].front().first;
                const std::uint32_t b = blocks.block_of(first / d, first % d);
                if (!selected(parity, blocks.block(b).parity)) continue;
                Terms local;
                local.reserve(eq[k].size());
                for (const auto& [u, v] : eq[k]) {
                    if (blocks.block_of(u / d, u % d) != b) {
                        throw StructureError("derivation_space: Leibniz equation crosses blocks");
                    }
                    local.emplace_back(blocks.local_of(u / d, u % d), v);
                }
                SparseVec row = SparseVec::from_terms(std::move(local));
                if (!row.empty()) equations[b].push_back(std::move(row));
            }
        }
    }

    std::vector<std::vector<SparseVec>> solutions(blocks.count());
    parallel_for(blocks.count(), jobs, [&](std::size_t b) {
        if (!selected(parity, blocks.block(b).parity)) return;
        const std::size_t nloc = blocks.block(b).unknowns.size();
        Echelon ech(nloc);
        for (auto& row : equations[b]) {
            if (ech.rank() == nloc) break;
            ech.insert(std::move(row));
        }
        Subspace ker = kernel(Matrix::from_rows(nloc, ech.rows()));
        for (const auto& v : ker.basis()) solutions[b].push_back(blocks.lift(v, b));
    });
    std::vector<SparseVec> all;
    for (auto& s : solutions) {
        for (auto& v : s) all.push_back(std::move(v));
    }
    return Subspace(d * d, all);
}

Subspace derivation_space_reference(const AlgebraModel& a, ParitySelect parity) {
    const std::size_t d = a.dim();
    Echelon ech(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (!selected(parity, (a.parity(r) + a.parity(c)) & 1)) {
                ech.insert(SparseVec::unit(static_cast<std::uint32_t>(r * d + c)));
            }
        }
    }
    std::vector<Terms> eq(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            for (auto& t : eq) t.clear();
            leibniz_equations(a, i, j, eq);
            for (auto& t : eq) {
                if (!t.empty()) ech.insert(SparseVec::from_terms(std::move(t)));
            }
        }
    }
    return kernel(Matrix::from_rows(d * d, ech.rows()));
}

Subspace ad_image(const LPrimeModel& p) {
    std::vector<SparseVec> rows;
    rows.reserve(p.dim_lprime());
    for (std::size_t u = 0; u < p.dim_lprime(); ++u) {
        rows.push_back(ad_matrix(p.ext, SparseVec::unit(static_cast<std::uint32_t>(u)), p.dim_l()).flatten());
    }
    return Subspace(p.dim_l() * p.dim_l(), rows);
}

bool transitivity_check(const AlgebraModel& ext) {
    std::vector<std::size_t> minus_one;
    std::vector<std::size_t> nonneg;
    for (std::size_t i = 0; i < ext.dim(); ++i) {
        if (ext.degree(i) == -1) {
            minus_one.push_back(i);
        } else if (ext.degree(i) >= 0) {
            nonneg.push_back(i);
        }
    }
    // a -> ([a, v_0], [a, v_1], ...) is injective on the nonnegative part iff
    // the images of its basis vectors are independent.
    const std::size_t d = ext.dim();
    Echelon ech(minus_one.size() * d);
    for (std::size_t u : nonneg) {
        Terms terms;
        for (std::size_t k = 0; k < minus_one.size(); ++k) {
            for (const auto& e : ext.bracket_basis(u, minus_one[k])) {
                terms.emplace_back(static_cast<std::uint32_t>(k * d + e.index), e.value);
            }
        }
        if (!ech.insert(SparseVec::from_terms(std::move(terms)))) return false;
    }
    return true;
}

DerivationReport derivation_report(const LPrimeModel& p, unsigned jobs) {
    DerivationReport rep;
    rep.family = p.base.family();
    rep.n = p.base.n();
    rep.dim_l = p.dim_l();
    rep.dim_lprime = p.dim_lprime();
    Subspace der = derivation_space(p.base, ParitySelect::Both, jobs);
    Subspace ad = ad_image(p);
    rep.dim_der = der.dim();
    rep.dim_ad = ad.dim();
    rep.lemma_der_holds = der == ad;
    rep.transitive = transitivity_check(p);
    return rep;
}

}  // namespace cartansuper
