#include "cartansuper_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cartansuper/derivations.hpp"
#include "cartansuper/errors.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/localcert.hpp"
#include "cartansuper/serialize.hpp"

namespace cartansuper::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string family;
    int n = 0;
    std::string model_path;
    std::string out_path;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::size_t budget = 0;
    unsigned jobs = 1;
    bool timings = false;
    std::string witness = "any";
    long long triples = -1;  // -1: full scan up to dim 64, 10^5 samples above
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_model_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("family,--family", cfg.family, "W, S, Stilde or H")->envname("CARTANSUPER_FAMILY");
    sub->add_option("n,--n", cfg.n, "number of Grassmann generators")->envname("CARTANSUPER_N");
    sub->add_option("--model", cfg.model_path, "read the model from a JSON file instead")
        ->envname("CARTANSUPER_MODEL");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--out", cfg.out_path, "write the report here instead of stdout")->envname("CARTANSUPER_OUT");
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("CARTANSUPER_FORMAT");
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "seed for sampled checks and random probes")->envname("CARTANSUPER_SEED");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u))->envname("CARTANSUPER_JOBS");
}

AlgebraModel load_model(const RunConfig& cfg) {
    if (!cfg.model_path.empty()) {
        std::ifstream in(cfg.model_path);
        if (!in) throw InputError("cannot read model file '" + cfg.model_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_model(buf.str());
    }
    if (cfg.family.empty()) throw InputError("give a family and n, or --model PATH");
    FamilySpec spec{parse_family(cfg.family), cfg.n};
    return build(spec);
}

std::string model_name(const AlgebraModel& a) {
    std::string f = a.family() == Family::Stilde ? "S~" : family_name(a.family());
    return f + "(" + std::to_string(a.n()) + ")";
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + cfg.out_path + "'");
    f << text;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

int cmd_build(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.model_path.empty()) throw InputError("build takes a family and n, not --model");
    AlgebraModel a = load_model(cfg);
    if (cfg.format == "json") {
        emit(cfg, dump_model(a), out);
        return kOk;
    }
    std::ostringstream s;
    s << model_name(a) << ": dim " << a.dim() << "\n";
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s << i << "\t" << a.basis(i).label(a.n()) << "\tparity " << a.parity(i) << "\tdegree " << a.degree(i)
          << "\tweight " << weight_str(a.weight(i)) << "\n";
    }
    emit(cfg, s.str(), out);
    return kOk;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
    AlgebraModel a = load_model(cfg);
    LPrimeModel p = build_lprime(a);
    std::map<int, std::size_t> by_degree;
    std::set<WeightVec> roots;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        ++by_degree[a.degree(i)];
        if (!is_zero_weight(a.weight(i))) roots.insert(a.weight(i));
    }
    const int lo = by_degree.empty() ? 0 : by_degree.begin()->first;
    const int hi = by_degree.empty() ? 0 : by_degree.rbegin()->first;
    const std::size_t dim0 = by_degree.count(0) ? by_degree.at(0) : 0;
    if (cfg.format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["family"] = family_name(a.family());
        j["n"] = a.n();
        j["dim_L"] = a.dim();
        j["dim_Lprime"] = p.dim_lprime();
        j["Lprime_extra"] = p.extra;
        j["grading_modulus"] = a.grading_modulus();
        j["degree_min"] = lo;
        j["degree_max"] = hi;
        json dims = json::array();
        for (const auto& [deg, cnt] : by_degree) dims.push_back(json::array({deg, cnt}));
        j["dim_by_degree"] = std::move(dims);
        j["dim_L0"] = dim0;
        j["root_count"] = roots.size();
        j["cartan_rank"] = a.cartan_rank();
        emit(cfg, json_text(j), out);
        return kOk;
    }
    std::ostringstream s;
    s << model_name(a) << "\n";
    s << "  dim L          " << a.dim() << "\n";
    s << "  dim L'         " << p.dim_lprime();
    if (!p.extra.empty()) {
        s << " (adds";
        for (const auto& e : p.extra) s << " " << e;
        s << ")";
    }
    s << "\n";
    s << "  grading        " << (a.grading_modulus() ? "Z_" + std::to_string(a.grading_modulus()) : std::string("Z"))
      << ", degrees [" << lo << ", " << hi << "]\n";
    s << "  dims by degree";
    for (const auto& [deg, cnt] : by_degree) s << " " << deg << ":" << cnt;
    s << "\n";
    s << "  dim L_0        " << dim0 << "\n";
    s << "  roots          " << roots.size() << "\n";
    s << "  Cartan rank    " << a.cartan_rank() << "\n";
    emit(cfg, s.str(), out);
    return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    AlgebraModel a = load_model(cfg);
    AxiomOptions ao;
    ao.seed = cfg.seed;
    if (cfg.triples >= 0) {
        ao.sampled_triples = static_cast<std::size_t>(cfg.triples);
    } else if (a.dim() > 64) {
        ao.sampled_triples = 100000;
    }
    AxiomReport axioms = check_axioms(a, ao);

    std::optional<DerivationReport> der;
    std::string failure = axioms.failure;
    if (axioms.ok) {
        LPrimeModel p = build_lprime(a);
        der = derivation_report(p, cfg.jobs);
        if (!der->lemma_der_holds) {
            failure = "Der L != ad L': dim Der = " + std::to_string(der->dim_der) +
                      ", dim ad L' = " + std::to_string(der->dim_ad);
        } else if (!der->transitive) {
            failure = "L' is not transitive";
        }
    }
    const bool passed = failure.empty();

    if (cfg.format == "json") {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["family"] = family_name(a.family());
        j["n"] = a.n();
        j["axioms"] = {{"ok", axioms.ok},
                       {"pairs_checked", axioms.pairs_checked},
                       {"triples_checked", axioms.triples_checked},
                       {"sampled", ao.sampled_triples != 0}};
        if (axioms.witness) j["axioms"]["witness"] = *axioms.witness;
        j["derivations"] = der ? derivation_report_to_json(*der) : json(nullptr);
        j["passed"] = passed;
        j["failure"] = passed ? json(nullptr) : json(failure);
        emit(cfg, json_text(j), out);
    } else {
        std::ostringstream s;
        s << model_name(a) << "\n";
        s << "  axioms         " << (axioms.ok ? "ok" : "FAIL") << " (" << axioms.pairs_checked << " pairs, "
          << axioms.triples_checked << (ao.sampled_triples ? " sampled" : "") << " triples)\n";
        if (der) {
            s << "  Der L = ad L'  " << (der->lemma_der_holds ? "yes" : "NO") << " (dim Der " << der->dim_der
              << ", dim ad L' " << der->dim_ad << ")\n";
            s << "  transitive     " << (der->transitive ? "yes" : "NO") << "\n";
        }
        s << (passed ? "PASS\n" : "FAIL: " + failure + "\n");
        emit(cfg, s.str(), out);
    }
    return passed ? kOk : kCheckFailed;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
    AlgebraModel a = load_model(cfg);
    LPrimeModel p = build_lprime(a);
    CertifyOptions opts;
    opts.budget = cfg.budget;
    opts.seed = cfg.seed;
    opts.jobs = cfg.jobs;
    opts.mode = parse_witness_mode(cfg.witness);
    Certificate c = certify_2local(p, certify(p, opts), opts);

    if (cfg.format == "json") {
        emit(cfg, json_text(certificate_to_json(c, cfg.timings)), out);
    } else {
        std::ostringstream s;
        s << model_name(a) << ": " << verdict_name(c.verdict) << "\n";
        s << "  t              " << c.t << (c.t_separating ? " (separating" : " (NOT separating") << " over "
          << c.weight_checks << " weights)\n";
        s << "  witness mode   " << witness_mode_name(c.mode) << "\n";
        s << "  probes         " << c.probe_labels.size() << " (" << c.proof_probe_count << " from the proof, "
          << c.candidates_tried << " random candidates tried)\n";
        s << "  dim C          " << c.dim_c << " (" << c.dim_c_proof << " after proof probes)\n";
        s << "  dim ad L'      " << c.dim_ad << "\n";
        s << "  2-local        " << verdict_name(c.twolocal_verdict) << " (" << c.twolocal_pairs_feasible << "/"
          << c.twolocal_pairs_checked << " inner pairs feasible)\n";
        if (!c.twolocal_failing_pair.empty()) s << "  non-inner map fails 2-locality at " << c.twolocal_failing_pair << "\n";
        if (cfg.timings) s << "  elapsed        " << c.elapsed_ms << " ms\n";
        emit(cfg, s.str(), out);
    }
    return c.verdict == Verdict::Certified ? kOk : kInconclusive;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Cartan type Lie superalgebras: construction, derivations, local-derivation certificates",
                 "cartansuper"};
    app.require_subcommand(1);

    CLI::App* build_cmd = app.add_subcommand("build", "construct W(n), S(n), S~(n) or H(n) and print it");
    add_model_options(build_cmd, cfg);
    add_output_options(build_cmd, cfg);

    CLI::App* info_cmd = app.add_subcommand("info", "dimensions, grading depths, roots");
    add_model_options(info_cmd, cfg);
    add_output_options(info_cmd, cfg);

    CLI::App* check_cmd = app.add_subcommand("check", "axioms, Der L = ad L', transitivity");
    add_model_options(check_cmd, cfg);
    add_output_options(check_cmd, cfg);
    add_run_options(check_cmd, cfg);
    check_cmd->add_option("--triples", cfg.triples, "Jacobi triples to sample (0: all)")
        ->envname("CARTANSUPER_TRIPLES");

    CLI::App* certify_cmd = app.add_subcommand("certify", "certify LDer(L) = Der(L) and the 2-local corollary");
    add_model_options(certify_cmd, cfg);
    add_output_options(certify_cmd, cfg);
    add_run_options(certify_cmd, cfg);
    certify_cmd->add_option("--budget", cfg.budget, "maximum number of probes kept (0: 8 * dim L)")
        ->envname("CARTANSUPER_BUDGET");
    certify_cmd->add_option("--witness", cfg.witness, "any or homogeneous")
        ->check(CLI::IsMember({"any", "homogeneous"}))
        ->envname("CARTANSUPER_WITNESS");
    certify_cmd->add_flag("--timings", cfg.timings, "record elapsed_ms in reports")->envname("CARTANSUPER_TIMINGS");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*build_cmd) return cmd_build(cfg, out);
        if (*info_cmd) return cmd_info(cfg, out);
        if (*check_cmd) return cmd_check(cfg, out);
        if (*certify_cmd) return cmd_certify(cfg, out);
    } catch (const FamilyConstraintError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kInputError;
}

}  // namespace cartansuper::cli
