#include "cartansuper/serialize.hpp"

#include <sstream>

#include "cartansuper/errors.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/vector_fields.hpp"

namespace cartansuper {

using nlohmann::json;

namespace {

json sparse_to_json(const SparseVec& v) {
    json out = json::array();
    for (const auto& e : v) out.push_back(json::array({e.index, e.value.fraction_str()}));
    return out;
}

SparseVec sparse_from_json(const json& j, std::size_t bound, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of [index, \"num/den\"] pairs");
    std::vector<std::pair<std::uint32_t, Rational>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_unsigned() || !t[1].is_string()) {
            throw ParseError(where + ": malformed term " + t.dump());
        }
        const auto idx = t[0].get<std::uint64_t>();
        if (idx >= bound) throw ParseError(where + ": index " + std::to_string(idx) + " out of range");
        try {
            terms.emplace_back(static_cast<std::uint32_t>(idx), Rational::parse(t[1].get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw ParseError(where + ": bad rational " + t[1].dump() + " (" + e.what() + ")");
        }
    }
    return SparseVec::from_terms(std::move(terms));
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("model JSON: missing field '") + key + "'");
    return *it;
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("model JSON: field '") + key + "': " + e.what());
    }
}

}  // namespace

BasisDesc parse_descriptor(const std::string& text, int n) {
    BasisDesc d;
    if (text == "C") {
        d.kind = BasisKind::Grading;
        d.wcoords = grading_element(n);
        return d;
    }
    if (text.size() > 3 && text.rfind("H(", 0) == 0 && text.back() == ')') {
        d.kind = BasisKind::Ham;
        d.mono = Monomial::parse(text.substr(2, text.size() - 3));
        if ((d.mono.bits >> n) != 0) throw ParseError("descriptor '" + text + "' outside Λ(" + std::to_string(n) + ")");
        d.wcoords = ham(ExtElem(n, d.mono));
        return d;
    }
    const WBasis& wb = WBasis::get(n);
    d.wcoords = wb.parse(text);
    if (d.wcoords.size() == 1 && d.wcoords.front().value.is_one()) {
        d.kind = BasisKind::VectorField;
        d.mono = wb.mono(d.wcoords.front().index);
        d.direction = wb.direction(d.wcoords.front().index);
    } else {
        d.kind = BasisKind::Combination;
    }
    return d;
}

json model_to_json(const AlgebraModel& a) {
    const auto& p = a.parts();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family_name(p.family);
    j["n"] = p.n;
    j["grading_modulus"] = p.grading_modulus;
    json basis = json::array();
    for (const auto& b : p.basis) basis.push_back(b.label(p.n));
    j["basis"] = std::move(basis);
    json bracket = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (const auto& [k, v] : p.bracket.row(i)) bracket.push_back(json::array({i, k, sparse_to_json(v)}));
    }
    j["bracket"] = std::move(bracket);
    j["parity"] = p.parity;
    j["degree"] = p.degree;
    j["weight"] = p.weight;
    j["cartan"] = p.cartan;
    json ce = json::array();
    for (const auto& h : p.cartan_elements) ce.push_back(sparse_to_json(h));
    j["cartan_elements"] = std::move(ce);
    return j;
}

AlgebraModel model_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("model JSON: expected an object");
    const int version = get_as<int>(j, "schema_version");
    if (version != kSchemaVersion) {
        throw ParseError("model JSON: unsupported schema_version " + std::to_string(version));
    }
    AlgebraModel::Parts p;
    p.family = parse_family(get_as<std::string>(j, "family"));
    p.n = get_as<int>(j, "n");
    if (p.n < 1 || p.n > 16) throw ParseError("model JSON: n out of range");
    p.grading_modulus = get_as<int>(j, "grading_modulus");
    if (p.grading_modulus < 0) throw ParseError("model JSON: negative grading_modulus");

    for (const auto& s : get_as<std::vector<std::string>>(j, "basis")) {
        try {
            p.basis.push_back(parse_descriptor(s, p.n));
        } catch (const std::exception& e) {
            throw ParseError("model JSON: basis descriptor '" + s + "': " + e.what());
        }
    }
    const std::size_t d = p.basis.size();
    p.parity = get_as<std::vector<int>>(j, "parity");
    p.degree = get_as<std::vector<int>>(j, "degree");
    p.weight = get_as<std::vector<WeightVec>>(j, "weight");
    p.cartan = get_as<std::vector<std::size_t>>(j, "cartan");
    if (p.parity.size() != d || p.degree.size() != d || p.weight.size() != d) {
        throw ParseError("model JSON: parity/degree/weight lengths differ from the basis size");
    }
    for (int q : p.parity) {
        if (q != 0 && q != 1) throw ParseError("model JSON: parity entries must be 0 or 1");
    }

    p.bracket = BracketTable(d);
    const json& br = field(j, "bracket");
    if (!br.is_array()) throw ParseError("model JSON: bracket must be an array");
    for (const auto& entry : br) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_unsigned() ||
            !entry[1].is_number_unsigned()) {
            throw ParseError("model JSON: malformed bracket entry " + entry.dump());
        }
        const auto i = entry[0].get<std::uint64_t>();
        const auto k = entry[1].get<std::uint64_t>();
        if (i >= d || k >= d) throw ParseError("model JSON: bracket index out of range in " + entry.dump());
        p.bracket.set(i, k, sparse_from_json(entry[2], d, "bracket"));
    }
    const json& ce = field(j, "cartan_elements");
    if (!ce.is_array()) throw ParseError("model JSON: cartan_elements must be an array");
    for (const auto& h : ce) p.cartan_elements.push_back(sparse_from_json(h, d, "cartan_elements"));
    try {
        return AlgebraModel(std::move(p));
    } catch (const std::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
}

std::string dump_model(const AlgebraModel& a) {
    const json j = model_to_json(a);
    std::ostringstream out;
    out << "{\n";
    bool first = true;
    for (const char* key : {"schema_version", "family", "n", "grading_modulus", "basis", "bracket", "parity", "degree",
                            "weight", "cartan", "cartan_elements"}) {
        if (!first) out << ",\n";
        first = false;
        out << "  " << json(key).dump() << ": ";
        const json& v = j.at(key);
        if ((std::string_view(key) == "basis" || std::string_view(key) == "bracket") && !v.empty()) {
            out << "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out << "    " << v[i].dump() << (i + 1 < v.size() ? ",\n" : "\n");
            }
            out << "  ]";
        } else {
            out << v.dump();
        }
    }
    out << "\n}\n";
    return out.str();
}

AlgebraModel parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    return model_from_json(j);
}

json derivation_report_to_json(const DerivationReport& r) {
    json j;
    j["family"] = family_name(r.family);
    j["n"] = r.n;
    j["dim_L"] = r.dim_l;
    j["dim_Lprime"] = r.dim_lprime;
    j["dim_Der"] = r.dim_der;
    j["dim_adLprime"] = r.dim_ad;
    j["lemma_der_holds"] = r.lemma_der_holds;
    j["transitive"] = r.transitive;
    return j;
}

json certificate_to_json(const Certificate& c, bool timings) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family_name(c.family);
    j["n"] = c.n;
    j["t"] = c.t;
    j["t_separating"] = c.t_separating;
    j["weight_checks"] = c.weight_checks;
    j["witness_mode"] = witness_mode_name(c.mode);
    j["probe_labels"] = c.probe_labels;
    j["proof_probe_count"] = c.proof_probe_count;
    j["dim_C_proof"] = c.dim_c_proof;
    j["candidates_tried"] = c.candidates_tried;
    j["dim_C"] = c.dim_c;
    j["dim_adLprime"] = c.dim_ad;
    j["verdict"] = verdict_name(c.verdict);
    j["twolocal_verdict"] = verdict_name(c.twolocal_verdict);
    j["twolocal_pairs_checked"] = c.twolocal_pairs_checked;
    j["twolocal_pairs_feasible"] = c.twolocal_pairs_feasible;
    j["twolocal_failing_pair"] = c.twolocal_failing_pair.empty() ? json(nullptr) : json(c.twolocal_failing_pair);
    j["elapsed_ms"] = timings ? json(c.elapsed_ms) : json(nullptr);
    return j;
}

}  // namespace cartansuper
