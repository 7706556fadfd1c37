#include "cartansuper/localcert.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "cartansuper/errors.hpp"
#include "cartansuper/parallel.hpp"
#include "cartansuper/vector_fields.hpp"

namespace cartansuper {

namespace {

using Terms = std::vector<std::pair<std::uint32_t, Rational>>;

SuperVec unit(std::size_t i) { return SparseVec::unit(static_cast<std::uint32_t>(i)); }

std::set<WeightVec> realized_nonzero_weights(const AlgebraModel& a) {
    std::set<WeightVec> out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (!is_zero_weight(a.weight(i))) out.insert(a.weight(i));
    }
    return out;
}

// Map x -> [u, x] for u in L', as rows of a (dim L') x (dim L) matrix.
std::vector<SparseVec> orbit_rows(const SuperVec& x, const LPrimeModel& p) {
    std::vector<SparseVec> rows;
    rows.reserve(p.dim_lprime());
    for (std::size_t u = 0; u < p.dim_lprime(); ++u) {
        SuperVec v = p.ext.bracket_with(u, x);
        if (!v.empty() && v.extent() > p.dim_l()) {
            throw StructureError("orbit: [L', x] leaves L");
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

void check_in_l(const SuperVec& x, const LPrimeModel& p, const char* what) {
    if (x.extent() > p.dim_l()) throw DimensionMismatch(std::string(what) + ": vector outside L");
}

std::string describe(const SuperVec& x, const AlgebraModel& a) {
    if (x.size() == 1 && x.front().value.is_one()) return a.basis(x.front().index).label(a.n());
    return a.to_wcoords(x).empty() ? "0" : WBasis::get(a.n()).render(a.to_wcoords(x));
}

SuperVec random_element(std::mt19937_64& rng, const std::vector<std::size_t>& pool, std::size_t terms) {
    SuperVec v;
    if (pool.empty()) return v;
    while (v.empty()) {
        for (std::size_t k = 0; k < terms; ++k) {
            std::int64_t c = static_cast<std::int64_t>(rng() % 6);  // 0..5 -> -3..-1, 1..3
            c = c < 3 ? c - 3 : c - 2;
            v.add_term(static_cast<std::uint32_t>(pool[rng() % pool.size()]), Rational(c));
        }
    }
    return v;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

}  // namespace

Subspace orbit(const SuperVec& x, const LPrimeModel& p) {
    check_in_l(x, p, "orbit");
    return Subspace(p.dim_l(), orbit_rows(x, p));
}

bool is_local_at(const EndMap& phi, const SuperVec& x, const LPrimeModel& p) {
    return member(orbit(x, p), phi.matrix.apply(x));
}

bool is_2local_at(const EndMap& phi, const SuperVec& x, const SuperVec& y, const LPrimeModel& p) {
    check_in_l(x, p, "is_2local_at");
    check_in_l(y, p, "is_2local_at");
    const std::size_t d = p.dim_l();
    // Column u of the stacked system is ([e_u, x], [e_u, y]).
    std::vector<SparseVec> cols;
    cols.reserve(p.dim_lprime());
    for (std::size_t u = 0; u < p.dim_lprime(); ++u) {
        SparseVec top = p.ext.bracket_with(u, x);
        for (const auto& e : p.ext.bracket_with(u, y)) top.add_term(static_cast<std::uint32_t>(d + e.index), e.value);
        cols.push_back(std::move(top));
    }
    Matrix m = Matrix::from_rows(2 * d, std::move(cols)).transpose();
    SparseVec rhs = phi.matrix.apply(x);
    for (const auto& e : phi.matrix.apply(y)) rhs.add_term(static_cast<std::uint32_t>(d + e.index), e.value);
    return solve(m, rhs).has_value();
}

std::map<Cell, EndMap> bigrade_decompose(const EndMap& phi, const AlgebraModel& a) {
    const std::size_t d = a.dim();
    if (phi.matrix.rows() != d || phi.matrix.cols() != d) {
        throw DimensionMismatch("bigrade_decompose: matrix is not dim(L) x dim(L)");
    }
    std::map<Cell, Matrix> parts;
    for (std::size_t r = 0; r < d; ++r) {
        for (const auto& e : phi.matrix.row(r)) {
            Cell shift{a.normalize_degree(a.degree(r) - a.degree(e.index)), a.weight(r) - a.weight(e.index)};
            auto it = parts.find(shift);
            if (it == parts.end()) it = parts.emplace(shift, Matrix(d, d)).first;
            it->second.set(r, e.index, e.value);
        }
    }
    std::map<Cell, EndMap> out;
    for (auto& [shift, m] : parts) out.emplace(shift, EndMap::of(std::move(m), a));
    return out;
}

SeparatingScalar check_separating(const AlgebraModel& a, std::int64_t t) {
    SeparatingScalar s;
    s.t = t;
    s.separating = true;
    for (const auto& w : realized_nonzero_weights(a)) {
        Rational value(0);
        Rational power(1);
        for (int c : w) {
            power *= Rational(t);
            value += power * Rational(c);
        }
        if (value.is_zero()) s.separating = false;
        s.checks.push_back({w, value});
    }
    return s;
}

SeparatingScalar separating_t(const AlgebraModel& ext) {
    for (std::int64_t t = 2;; ++t) {
        SeparatingScalar s = check_separating(ext, t);
        if (s.separating) return s;
        if (t > 1'000'000) throw StructureError("separating_t: no separating integer found");
    }
}

SuperVec cartan_probe(const AlgebraModel& a, std::int64_t t) {
    SuperVec h0;
    Rational power(1);
    for (const auto& h : a.cartan_elements()) {
        power *= Rational(t);
        h0.axpy(power, h);
    }
    return h0;
}

std::vector<Probe> proof_probes(const LPrimeModel& p, const SeparatingScalar& t) {
    const AlgebraModel& a = p.base;
    const int n = a.n();
    const std::size_t l = a.cartan_rank();
    std::vector<Probe> out;

    const SuperVec h0 = cartan_probe(a, t.t);
    out.push_back({"h0", h0});
    for (std::size_t i = 0; i < l; ++i) out.push_back({"h" + std::to_string(i + 1), a.cartan_elements()[i]});

    // a h_i - b h_k with a = α(h_k), b = α(h_i), one per direction.
    std::set<std::tuple<std::size_t, std::size_t, int, int>> seen;
    for (const auto& w : realized_nonzero_weights(p.ext)) {
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t k = i + 1; k < l; ++k) {
                int ca = w[k];
                int cb = w[i];
                if (ca == 0 || cb == 0) continue;
                int g = std::gcd(ca, cb);
                ca /= g;
                cb /= g;
                if (ca < 0) {
                    ca = -ca;
                    cb = -cb;
                }
                if (!seen.insert({i, k, ca, cb}).second) continue;
                SuperVec v = Rational(ca) * a.cartan_elements()[i];
                v.axpy(Rational(-cb), a.cartan_elements()[k]);
                out.push_back({"h_ik(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ";" +
                                   std::to_string(ca) + "," + std::to_string(cb) + ")",
                               std::move(v)});
            }
        }
    }

    // Degree -1 generators ∂_k - δ ξ_k, δ = 1 exactly for S̃.
    const bool tilde = a.family() == Family::Stilde;
    const WBasis& wb = WBasis::get(n);
    std::vector<Probe> gens;
    SuperVec gen_sum;
    for (int k = 1; k <= n; ++k) {
        SparseVec w = wb.field(ExtElem(n, Monomial::one()), k);
        if (tilde) w -= xi(k, n);
        auto coords = model_coords(a, w);
        if (!coords) throw StructureError("proof_probes: degree -1 generator outside L");
        std::string label = "d" + std::to_string(k) + (tilde ? "-xi" + std::to_string(k) : "");
        gen_sum += *coords;
        gens.push_back({label, std::move(*coords)});
    }
    for (const auto& g : gens) out.push_back(g);
    for (const auto& g : gens) out.push_back({"h0+" + g.label, h0 + g.vector});

    const std::set<std::size_t> cartan(a.cartan().begin(), a.cartan().end());
    const std::string sum_label = tilde ? "D~" : "D";
    for (std::size_t c = 0; c < a.dim(); ++c) {
        if (a.degree(c) < 0) continue;
        out.push_back({"x[" + a.basis(c).label(n) + "]+" + sum_label, unit(c) + gen_sum});
    }
    for (std::size_t c = 0; c < a.dim(); ++c) {
        if (a.degree(c) < 0 || cartan.count(c)) continue;
        out.push_back({"h0+x[" + a.basis(c).label(n) + "]", h0 + unit(c)});
    }
    return out;
}

ConstraintSystem::ConstraintSystem(const LPrimeModel& p, unsigned jobs, WitnessMode mode)
    : p_(&p), jobs_(jobs), mode_(mode), blocks_(p.base) {
    constraints_.reserve(blocks_.count());
    inner_.reserve(blocks_.count());
    for (const auto& b : blocks_.blocks()) {
        constraints_.emplace_back(b.unknowns.size());
        inner_.emplace_back(b.unknowns.size());
    }
    const std::size_t d = p.dim_l();
    for (std::size_t u = 0; u < p.dim_lprime(); ++u) {
        SparseVec flat = ad_matrix(p.ext, unit(u), d).flatten();
        if (flat.empty()) continue;
        const std::uint32_t first = flat.front().index;
        const std::uint32_t b = blocks_.block_of(first / d, first % d);
        SparseVec local = blocks_.restrict_flat(flat, b);
        if (local.size() != flat.size()) {
            throw StructureError("ConstraintSystem: ad of a basis vector is not homogeneous");
        }
        inner_[b].insert(std::move(local));
    }
}

ConstraintSystem::BlockRows ConstraintSystem::homogeneous_rows_for(const SuperVec& x) const {
    const std::size_t d = p_->dim_l();
    const AlgebraModel& ext = p_->ext;
    std::set<std::uint32_t> touched;
    for (const auto& ec : x) {
        for (std::size_t r = 0; r < d; ++r) touched.insert(blocks_.block_of(r, ec.index));
    }
    BlockRows out;
    for (std::uint32_t b : touched) {
        const auto& blk = blocks_.block(b);
        // Output coordinates reachable by φ_b(x), numbered locally.
        std::map<std::uint32_t, std::uint32_t> rows;
        for (const auto& ec : x) {
            for (std::size_t r = 0; r < d; ++r) {
                if (blocks_.block_of(r, ec.index) == b) rows.emplace(static_cast<std::uint32_t>(r), 0);
            }
        }
        std::uint32_t next = 0;
        for (auto& [r, k] : rows) k = next++;
        std::vector<SparseVec> orbit_b;
        for (std::size_t u = 0; u < ext.dim(); ++u) {
            if (ext.parity(u) != blk.parity || ext.cell(u) != blk.shift) continue;
            Terms t;
            for (const auto& e : ext.bracket_with(u, x)) {
                auto it = rows.find(e.index);
                if (it == rows.end()) throw StructureError("ConstraintSystem: homogeneous witness leaves its block");
                t.emplace_back(it->second, e.value);
            }
            orbit_b.push_back(SparseVec::from_terms(std::move(t)));
        }
        std::vector<std::uint32_t> row_index(rows.size());
        for (const auto& [r, k] : rows) row_index[k] = r;
        const Subspace ann = annihilator(Subspace(rows.size(), orbit_b));
        for (const auto& lambda : ann.basis()) {
            Terms terms;
            for (const auto& el : lambda) {
                const std::uint32_t r = row_index[el.index];
                for (const auto& ec : x) {
                    if (blocks_.block_of(r, ec.index) == b) {
                        terms.emplace_back(blocks_.local_of(r, ec.index), el.value * ec.value);
                    }
                }
            }
            SparseVec row = SparseVec::from_terms(std::move(terms));
            if (!row.empty()) out.emplace_back(b, std::move(row));
        }
    }
    return out;
}

ConstraintSystem::BlockRows ConstraintSystem::rows_for(const SuperVec& x, bool vanishing) const {
    const std::size_t d = p_->dim_l();
    check_in_l(x, *p_, "ConstraintSystem");
    if (!vanishing && mode_ == WitnessMode::Homogeneous) return homogeneous_rows_for(x);
    std::vector<SparseVec> functionals;
    if (vanishing) {
        for (std::size_t r = 0; r < d; ++r) functionals.push_back(unit(r));
    } else {
        functionals = annihilator(orbit(x, *p_)).basis();
    }
    BlockRows out;
    for (const auto& lambda : functionals) {
        std::map<std::uint32_t, Terms> split;
        for (const auto& er : lambda) {
            for (const auto& ec : x) {
                split[blocks_.block_of(er.index, ec.index)].emplace_back(blocks_.local_of(er.index, ec.index),
                                                                         er.value * ec.value);
            }
        }
        for (auto& [b, terms] : split) {
            SparseVec row = SparseVec::from_terms(std::move(terms));
            if (!row.empty()) out.emplace_back(b, std::move(row));
        }
    }
    return out;
}

void ConstraintSystem::absorb(std::vector<BlockRows> per_probe) {
    std::vector<std::vector<SparseVec>> per_block(blocks_.count());
    for (auto& rows : per_probe) {
        for (auto& [b, row] : rows) per_block[b].push_back(std::move(row));
    }
    parallel_for(blocks_.count(), jobs_, [&](std::size_t b) {
        Echelon& ech = constraints_[b];
        for (auto& row : per_block[b]) {
            if (ech.rank() == ech.cols()) break;
            ech.insert(std::move(row));
        }
    });
}

bool ConstraintSystem::add_probe(const SuperVec& x) {
    const std::size_t before = dim();
    add_probes({x});
    return dim() < before;
}

void ConstraintSystem::add_probes(const std::vector<SuperVec>& xs) {
    std::vector<BlockRows> per_probe(xs.size());
    parallel_for(xs.size(), jobs_, [&](std::size_t i) { per_probe[i] = rows_for(xs[i], false); });
    absorb(std::move(per_probe));
}

void ConstraintSystem::add_vanishing(const SuperVec& x) {
    std::vector<BlockRows> one;
    one.push_back(rows_for(x, true));
    absorb(std::move(one));
}

std::size_t ConstraintSystem::dim() const {
    std::size_t total = 0;
    for (const auto& ech : constraints_) total += ech.cols() - ech.rank();
    return total;
}

std::size_t ConstraintSystem::dim_ad() const {
    std::size_t total = 0;
    for (const auto& ech : inner_) total += ech.rank();
    return total;
}

bool ConstraintSystem::tight() const {
    for (std::size_t b = 0; b < constraints_.size(); ++b) {
        if (constraints_[b].cols() - constraints_[b].rank() != inner_[b].rank()) return false;
    }
    return true;
}

bool ConstraintSystem::contains(const Matrix& phi) const {
    const std::size_t d = p_->dim_l();
    if (phi.rows() != d || phi.cols() != d) throw DimensionMismatch("ConstraintSystem::contains: wrong shape");
    std::map<std::uint32_t, Terms> split;
    for (std::size_t r = 0; r < d; ++r) {
        for (const auto& e : phi.row(r)) {
            split[blocks_.block_of(r, e.index)].emplace_back(blocks_.local_of(r, e.index), e.value);
        }
    }
    for (auto& [b, terms] : split) {
        SparseVec local = SparseVec::from_terms(std::move(terms));
        for (const auto& row : constraints_[b].rows()) {
            if (!dot(row, local).is_zero()) return false;
        }
    }
    return true;
}

bool ConstraintSystem::contains_inner() const {
    for (std::size_t b = 0; b < constraints_.size(); ++b) {
        for (const auto& v : inner_[b].rows()) {
            for (const auto& row : constraints_[b].rows()) {
                if (!dot(row, v).is_zero()) return false;
            }
        }
    }
    return true;
}

Subspace ConstraintSystem::space() const {
    std::vector<std::vector<SparseVec>> per_block(blocks_.count());
    parallel_for(blocks_.count(), jobs_, [&](std::size_t b) {
        Subspace ker = kernel(Matrix::from_rows(constraints_[b].cols(), constraints_[b].rows()));
        for (const auto& v : ker.basis()) per_block[b].push_back(blocks_.lift(v, b));
    });
    std::vector<SparseVec> all;
    for (auto& vs : per_block) {
        for (auto& v : vs) all.push_back(std::move(v));
    }
    const std::size_t d = p_->dim_l();
    return Subspace(d * d, all);
}

std::optional<Matrix> ConstraintSystem::non_inner_member() const {
    const std::size_t d = p_->dim_l();
    for (std::size_t b = 0; b < constraints_.size(); ++b) {
        if (constraints_[b].cols() - constraints_[b].rank() == inner_[b].rank()) continue;
        Subspace ker = kernel(Matrix::from_rows(constraints_[b].cols(), constraints_[b].rows()));
        for (const auto& v : ker.basis()) {
            if (!inner_[b].in_span(v)) return Matrix::unflatten(blocks_.lift(v, b), d, d);
        }
    }
    return std::nullopt;
}

std::size_t cartan_collapse_residual(const LPrimeModel& p, std::int64_t t, unsigned jobs) {
    const AlgebraModel& a = p.base;
    const std::size_t d = a.dim();
    const std::size_t l = a.cartan().size();
    if (l != a.cartan_rank()) throw StructureError("cartan_collapse_residual: H_L is not spanned by basis vectors");
    ConstraintSystem sys(p, jobs);
    for (const auto& pr : proof_probes(p, check_separating(p.ext, t))) {
        const bool cartan_only = pr.label != "h0" && pr.label.rfind("h", 0) == 0 && pr.label.find('+') == std::string::npos;
        if (cartan_only) sys.add_probe(pr.vector);
    }
    sys.add_vanishing(cartan_probe(a, t));
    // Columns outside H_L carry no constraint.
    return sys.dim() - d * (d - l);
}

Subspace constrained_space(const LPrimeModel& p, const std::vector<Probe>& probes, unsigned jobs, WitnessMode mode) {
    ConstraintSystem sys(p, jobs, mode);
    std::vector<SuperVec> xs;
    xs.reserve(probes.size());
    for (const auto& pr : probes) xs.push_back(pr.vector);
    sys.add_probes(xs);
    return sys.space();
}

Subspace constrained_space_reference(const LPrimeModel& p, const std::vector<Probe>& probes) {
    const std::size_t d = p.dim_l();
    Echelon ech(d * d);
    for (const auto& pr : probes) {
        check_in_l(pr.vector, p, "constrained_space_reference");
        const Subspace ann = annihilator(orbit(pr.vector, p));
        for (const auto& lambda : ann.basis()) {
            Terms terms;
            for (const auto& er : lambda) {
                for (const auto& ec : pr.vector) {
                    terms.emplace_back(static_cast<std::uint32_t>(er.index * d + ec.index), er.value * ec.value);
                }
            }
            ech.insert(SparseVec::from_terms(std::move(terms)));
        }
    }
    return kernel(Matrix::from_rows(d * d, ech.rows()));
}

std::string verdict_name(Verdict v) { return v == Verdict::Certified ? "CERTIFIED" : "INCONCLUSIVE"; }

std::string witness_mode_name(WitnessMode m) { return m == WitnessMode::Any ? "any" : "homogeneous"; }

WitnessMode parse_witness_mode(const std::string& name) {
    if (name == "any") return WitnessMode::Any;
    if (name == "homogeneous") return WitnessMode::Homogeneous;
    throw ParseError("unknown witness mode '" + name + "' (expected any or homogeneous)");
}

Certificate certify(const LPrimeModel& p, const CertifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const AlgebraModel& a = p.base;
    Certificate cert;
    cert.family = a.family();
    cert.n = a.n();

    SeparatingScalar s = opts.force_t ? check_separating(p.ext, *opts.force_t) : separating_t(p.ext);
    cert.t = s.t;
    cert.t_separating = s.separating;
    cert.weight_checks = s.checks.size();

    const std::size_t budget = opts.budget ? opts.budget : 8 * a.dim();
    std::vector<Probe> probes = proof_probes(p, s);
    if (probes.size() > budget) probes.resize(budget);
    cert.proof_probe_count = probes.size();
    cert.mode = opts.mode;

    ConstraintSystem sys(p, opts.jobs, opts.mode);
    std::vector<SuperVec> xs;
    std::set<std::uint32_t> unit_probes;
    for (const auto& pr : probes) {
        xs.push_back(pr.vector);
        cert.probe_labels.push_back(pr.label);
        if (pr.vector.size() == 1) unit_probes.insert(pr.vector.front().index);
    }
    sys.add_probes(xs);
    cert.dim_c_proof = sys.dim();

    for (std::size_t c = 0; c < a.dim() && !sys.tight() && cert.probe_labels.size() < budget; ++c) {
        if (unit_probes.count(static_cast<std::uint32_t>(c))) continue;
        if (sys.add_probe(unit(c))) cert.probe_labels.push_back("e[" + a.basis(c).label(a.n()) + "]");
    }
    std::mt19937_64 rng(opts.seed);
    const std::vector<std::size_t> pool = iota_indices(a.dim());
    const std::size_t max_candidates = 16 * budget;
    while (!sys.tight() && cert.probe_labels.size() < budget && cert.candidates_tried < max_candidates) {
        SuperVec x = random_element(rng, pool, opts.random_terms);
        ++cert.candidates_tried;
        if (sys.add_probe(x)) cert.probe_labels.push_back("rand" + std::to_string(cert.candidates_tried));
    }

    if (!sys.contains_inner()) {
        throw StructureError("certify: an inner derivation violates a probe constraint");
    }
    cert.dim_c = sys.dim();
    cert.dim_ad = sys.dim_ad();
    cert.verdict = sys.tight() ? Verdict::Certified : Verdict::Inconclusive;
    if (cert.verdict == Verdict::Inconclusive) cert.witness = sys.non_inner_member();
    cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

Certificate certify_2local(const LPrimeModel& p, Certificate c, const CertifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const AlgebraModel& a = p.base;
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::vector<std::size_t> l_pool = iota_indices(p.dim_l());
    const std::vector<std::size_t> lp_pool = iota_indices(p.dim_lprime());

    c.twolocal_pairs_checked = 0;
    c.twolocal_pairs_feasible = 0;
    c.twolocal_failing_pair.clear();
    for (std::size_t k = 0; k < opts.twolocal_pairs; ++k) {
        SuperVec u = random_element(rng, lp_pool, 4);
        SuperVec x = random_element(rng, l_pool, 3);
        SuperVec y = random_element(rng, l_pool, 3);
        EndMap phi{ad_matrix(p.ext, u, p.dim_l()), MapParity::Mixed};
        ++c.twolocal_pairs_checked;
        if (is_2local_at(phi, x, y, p)) ++c.twolocal_pairs_feasible;
    }
    const bool inner_ok = c.twolocal_pairs_feasible == c.twolocal_pairs_checked;
    c.twolocal_verdict = c.verdict == Verdict::Certified && inner_ok ? Verdict::Certified : Verdict::Inconclusive;

    if (c.witness) {
        EndMap phi{*c.witness, MapParity::Mixed};
        for (std::size_t k = 0; k < opts.twolocal_pairs; ++k) {
            SuperVec x = k < p.dim_l() ? unit(k) : random_element(rng, l_pool, 3);
            SuperVec y = random_element(rng, l_pool, 3);
            if (!is_2local_at(phi, x, y, p)) {
                c.twolocal_failing_pair = "(" + describe(x, a) + ", " + describe(y, a) + ")";
                break;
            }
        }
    }
    c.elapsed_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return c;
}

}  // namespace cartansuper
