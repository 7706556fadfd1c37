#include "cartansuper/superalgebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cartansuper/errors.hpp"
#include "cartansuper/vector_fields.hpp"

namespace cartansuper {

std::string family_name(Family f) {
    switch (f) {
        case Family::W: return "W";
        case Family::S: return "S";
        case Family::Stilde: return "Stilde";
        case Family::H: return "H";
        case Family::Htilde: return "Htilde";
        case Family::Extended: return "Extended";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "W") return Family::W;
    if (name == "S") return Family::S;
    if (name == "Stilde" || name == "S~" || name == "S̃") return Family::Stilde;
    if (name == "H") return Family::H;
    if (name == "Htilde" || name == "H~") return Family::Htilde;
    if (name == "Extended") return Family::Extended;
    throw ParseError("unknown family '" + name + "' (expected W, S, Stilde or H)");
}

bool is_zero_weight(const WeightVec& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

WeightVec operator+(const WeightVec& a, const WeightVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("weight sum: lengths differ");
    WeightVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

WeightVec operator-(const WeightVec& a, const WeightVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("weight difference: lengths differ");
    WeightVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::string weight_str(const WeightVec& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

std::string BasisDesc::label(int n) const {
    switch (kind) {
        case BasisKind::Ham: return "H(" + mono.str() + ")";
        case BasisKind::Grading: return "C";
        case BasisKind::VectorField:
        case BasisKind::Combination: return WBasis::get(n).render(wcoords);
    }
    return "?";
}

const SparseVec& BracketTable::get(std::size_t i, std::size_t j) const {
    static const SparseVec kEmpty;
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != r.end() && it->first == j) {
        return it->second;
    }
    return kEmpty;
}

void BracketTable::set(std::size_t i, std::size_t j, SparseVec value) {
    if (i >= rows_.size() || j >= rows_.size()) {
        throw IndexOutOfRange("BracketTable::set: index out of range");
    }
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != r.end() && it->first == j) {
        if (value.empty()) {
            r.erase(it);
        } else {
            it->second = std::move(value);
        }
    } else if (!value.empty()) {
        r.insert(it, {static_cast<std::uint32_t>(j), std::move(value)});
    }
}

std::size_t BracketTable::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

AlgebraModel::AlgebraModel(Parts parts) : p_(std::move(parts)) {
    const std::size_t d = p_.basis.size();
    if (p_.bracket.dim() != d || p_.parity.size() != d || p_.degree.size() != d ||
        p_.weight.size() != d) {
        throw DimensionMismatch("AlgebraModel: per-basis arrays disagree with basis size");
    }
    for (const auto& w : p_.weight) {
        if (w.size() != p_.cartan_elements.size()) {
            throw DimensionMismatch("AlgebraModel: weight length differs from Cartan rank");
        }
    }
    for (std::size_t c : p_.cartan) {
        if (c >= d) throw IndexOutOfRange("AlgebraModel: Cartan index out of range");
    }
}

int AlgebraModel::normalize_degree(int d) const {
    if (p_.grading_modulus == 0) {
        return d;
    }
    const int m = p_.grading_modulus;
    return (((d + 1) % m) + m) % m - 1;
}

Cell AlgebraModel::shift_cell(const Cell& c, const Cell& by) const {
    return {normalize_degree(c.degree + by.degree), c.weight + by.weight};
}

SuperVec AlgebraModel::bracket_with(std::size_t i, const SuperVec& v) const {
    SuperVec out;
    for (const auto& e : v) {
        out.axpy(e.value, p_.bracket.get(i, e.index));
    }
    return out;
}

SuperVec AlgebraModel::bracket(const SuperVec& a, const SuperVec& b) const {
    SuperVec out;
    for (const auto& ea : a) {
        if (ea.index >= dim()) throw IndexOutOfRange("bracket: coordinate outside the algebra");
        for (const auto& eb : b) {
            const SparseVec& t = p_.bracket.get(ea.index, eb.index);
            if (!t.empty()) out.axpy(ea.value * eb.value, t);
        }
    }
    return out;
}

int AlgebraModel::parity_of(const SuperVec& v) const {
    int p = -2;
    for (const auto& e : v) {
        int q = p_.parity.at(e.index);
        if (p == -2) {
            p = q;
        } else if (p != q) {
            return -1;
        }
    }
    return p == -2 ? 0 : p;
}

SparseVec AlgebraModel::to_wcoords(const SuperVec& v) const {
    SparseVec out;
    for (const auto& e : v) out.axpy(e.value, p_.basis.at(e.index).wcoords);
    return out;
}

Matrix ad_matrix(const AlgebraModel& ext, const SuperVec& u, std::size_t dim_l) {
    if (dim_l > ext.dim()) {
        throw DimensionMismatch("ad_matrix: L larger than L'");
    }
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows(dim_l);
    for (std::size_t c = 0; c < dim_l; ++c) {
        SuperVec col;
        for (const auto& e : u) col.axpy(e.value, ext.bracket_basis(e.index, c));
        for (const auto& e : col) {
            if (e.index >= dim_l) {
                throw StructureError("ad_matrix: [u, x] leaves L");
            }
            rows[e.index].emplace_back(static_cast<std::uint32_t>(c), e.value);
        }
    }
    std::vector<SparseVec> out;
    out.reserve(dim_l);
    for (auto& r : rows) out.push_back(SparseVec::from_terms(std::move(r)));
    return Matrix::from_rows(dim_l, std::move(out));
}

namespace {

std::string basis_name(const AlgebraModel& a, std::size_t i) {
    return "e" + std::to_string(i) + "=" + a.basis(i).label(a.n());
}

bool check_pair(const AlgebraModel& a, std::size_t i, std::size_t j, AxiomReport& rep) {
    const SparseVec& ij = a.bracket_basis(i, j);
    const SparseVec& ji = a.bracket_basis(j, i);
    const int sign = (a.parity(i) & a.parity(j)) ? 1 : -1;  // [x,y] = -(-1)^{|x||y|}[y,x]
    SparseVec expect = ji;
    expect.scale(Rational(sign));
    if (ij != expect) {
        rep.ok = false;
        rep.failure = "anticommutativity fails for (" + basis_name(a, i) + ", " + basis_name(a, j) + ")";
        rep.witness = std::array<std::size_t, 3>{i, j, j};
        return false;
    }
    const int par = (a.parity(i) + a.parity(j)) & 1;
    const Cell target = a.shift_cell(a.cell(i), a.cell(j));
    for (const auto& e : ij) {
        if (e.index >= a.dim()) {
            rep.ok = false;
            rep.failure = "bracket leaves the basis";
            rep.witness = std::array<std::size_t, 3>{i, j, j};
            return false;
        }
        if (a.parity(e.index) != par) {
            rep.ok = false;
            rep.failure = "bracket is not even: parity breaks for (" + basis_name(a, i) + ", " +
                          basis_name(a, j) + ")";
            rep.witness = std::array<std::size_t, 3>{i, j, j};
            return false;
        }
        if (a.cell(e.index) != target) {
            rep.ok = false;
            rep.failure = "degree/weight additivity fails for (" + basis_name(a, i) + ", " +
                          basis_name(a, j) + ")";
            rep.witness = std::array<std::size_t, 3>{i, j, j};
            return false;
        }
    }
    return true;
}

bool check_triple(const AlgebraModel& a, std::size_t x, std::size_t y, std::size_t z, AxiomReport& rep) {
    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
    SuperVec lhs = a.bracket_with(x, a.bracket_basis(y, z));
    SuperVec rhs;
    for (const auto& e : a.bracket_basis(x, y)) {
        rhs.axpy(e.value, a.bracket_basis(e.index, z));
    }
    SuperVec third = a.bracket_with(y, a.bracket_basis(x, z));
    rhs.axpy(Rational((a.parity(x) & a.parity(y)) ? -1 : 1), third);
    if (lhs != rhs) {
        rep.ok = false;
        rep.failure = "super-Jacobi fails for (" + basis_name(a, x) + ", " + basis_name(a, y) + ", " +
                      basis_name(a, z) + ")";
        rep.witness = std::array<std::size_t, 3>{x, y, z};
        return false;
    }
    return true;
}

}  // namespace

AxiomReport check_axioms(const AlgebraModel& a, const AxiomOptions& opts) {
    AxiomReport rep;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            ++rep.pairs_checked;
            if (!check_pair(a, i, j, rep)) return rep;
        }
    }
    if (opts.sampled_triples == 0) {
        for (std::size_t x = 0; x < d; ++x) {
            for (std::size_t y = 0; y < d; ++y) {
                for (std::size_t z = 0; z < d; ++z) {
                    ++rep.triples_checked;
                    if (!check_triple(a, x, y, z, rep)) return rep;
                }
            }
        }
    } else if (d > 0) {
        std::mt19937_64 rng(opts.seed);
        for (std::size_t k = 0; k < opts.sampled_triples; ++k) {
            std::size_t x = rng() % d;
            std::size_t y = rng() % d;
            std::size_t z = rng() % d;
            ++rep.triples_checked;
            if (!check_triple(a, x, y, z, rep)) return rep;
        }
    }
    return rep;
}

std::map<Cell, std::vector<std::size_t>> bigrade_blocks(const AlgebraModel& a) {
    std::map<Cell, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        cells[a.cell(i)].push_back(i);
    }
    return cells;
}

}  // namespace cartansuper
