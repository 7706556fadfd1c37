#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cartansuper_cli/cli.hpp"

using namespace cartansuper::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path golden(const std::string& name) { return std::filesystem::path(CARTANSUPER_GOLDEN_DIR) / name; }

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("cartansuper_test_" + name);
}

}  // namespace

TEST(Cli, BuildWritesOneLinePerBasisVector) {
    Result r = run_cli({"build", "W", "4", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["basis"].size(), 64u);
    std::size_t lines = 0;
    std::istringstream in(r.out);
    std::string line;
    bool in_basis = false;
    while (std::getline(in, line)) {
        if (line.find("\"basis\"") != std::string::npos) in_basis = true;
        else if (in_basis && line.find(']') == line.find_first_not_of(' ')) in_basis = false;
        else if (in_basis) ++lines;
    }
    EXPECT_EQ(lines, 64u);
    EXPECT_EQ(run_cli({"build", "W", "4", "--format", "json"}).out, r.out);
}

TEST(Cli, BuildRejectsInvalidSpecs) {
    Result r = run_cli({"build", "Stilde", "5"});
    EXPECT_EQ(r.code, kInputError);
    EXPECT_NE(r.err.find("S̃ requires even n"), std::string::npos);
    r = run_cli({"build", "H", "4"});
    EXPECT_EQ(r.code, kInputError);
    EXPECT_NE(r.err.find("H requires n > 4"), std::string::npos);
    EXPECT_EQ(run_cli({"build", "Q", "4"}).code, kInputError);
    EXPECT_EQ(run_cli({"build", "W", "four"}).code, kInputError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kInputError);
    EXPECT_EQ(run_cli({}).code, kInputError);
    EXPECT_EQ(run_cli({"certify", "W", "4", "--format", "xml"}).code, kInputError);
}

TEST(Cli, InfoReportsGradingFacts) {
    auto info = [](std::vector<std::string> a) {
        a.insert(a.begin(), "info");
        a.insert(a.end(), {"--format", "json"});
        Result r = run_cli(a);
        EXPECT_EQ(r.code, kOk) << r.err;
        return nlohmann::json::parse(r.out);
    };
    nlohmann::json w = info({"W", "4"});
    EXPECT_EQ(w["degree_min"], -1);
    EXPECT_EQ(w["degree_max"], 3);
    EXPECT_EQ(w["dim_L0"], 16);
    EXPECT_EQ(w["cartan_rank"], 4);
    EXPECT_EQ(w["root_count"], 46);
    nlohmann::json h = info({"--family", "H", "--n", "5"});
    EXPECT_EQ(h["degree_min"], -1);
    EXPECT_EQ(h["degree_max"], 2);
    EXPECT_EQ(h["dim_Lprime"], 32);
    EXPECT_EQ(info({"S", "4"})["dim_L0"], 15);
}

TEST(Cli, CheckPassesOnModels) {
    EXPECT_EQ(run_cli({"check", "W", "4"}).code, kOk);
    Result r = run_cli({"check", "Stilde", "4", "--format", "json", "--jobs", "2"});
    ASSERT_EQ(r.code, kOk) << r.err;
    nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_TRUE(j["derivations"]["lemma_der_holds"].get<bool>());
}

TEST(Cli, CheckReadsModelFiles) {
    const auto path = temp_file("h5.json");
    ASSERT_EQ(run_cli({"build", "H", "5", "--format", "json", "--out", path.string()}).code, kOk);
    EXPECT_EQ(run_cli({"check", "--model", path.string()}).code, kOk);

    // a negated structure constant is reported with its triple
    nlohmann::json j = nlohmann::json::parse(slurp(path));
    for (auto& term : j["bracket"][5][2]) {
        std::string v = term[1];
        term[1] = v[0] == '-' ? v.substr(1) : "-" + v;
    }
    const auto bad = temp_file("h5_bad.json");
    std::ofstream(bad) << j.dump();
    Result r = run_cli({"check", "--model", bad.string()});
    EXPECT_EQ(r.code, kCheckFailed);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);

    const auto corrupt = temp_file("corrupt.json");
    std::ofstream(corrupt) << slurp(path).substr(0, 200);
    r = run_cli({"check", "--model", corrupt.string()});
    EXPECT_EQ(r.code, kInputError);
    EXPECT_NE(r.err.find("model JSON"), std::string::npos);
    EXPECT_EQ(run_cli({"check", "--model", temp_file("missing.json").string()}).code, kInputError);
}

TEST(Cli, CertifyVerdictsAndExitCodes) {
    Result r = run_cli({"certify", "H", "5", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "CERTIFIED");
    EXPECT_EQ(j["twolocal_verdict"], "CERTIFIED");
    EXPECT_TRUE(j["elapsed_ms"].is_null());

    r = run_cli({"certify", "W", "4", "--budget", "1", "--format", "json"});
    EXPECT_EQ(r.code, kInconclusive);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "INCONCLUSIVE");
    EXPECT_EQ(j["twolocal_verdict"], "INCONCLUSIVE");
    EXPECT_FALSE(j["twolocal_failing_pair"].is_null());

    r = run_cli({"certify", "H", "5", "--timings", "--format", "json"});
    EXPECT_TRUE(nlohmann::json::parse(r.out)["elapsed_ms"].is_number());
}

TEST(Cli, ReportsAreByteIdenticalForSameSeed) {
    const std::vector<std::string> args{"certify", "S", "4", "--seed", "5", "--format", "json"};
    Result a = run_cli(args);
    std::vector<std::string> threaded = args;
    threaded.insert(threaded.end(), {"--jobs", "4"});
    Result b = run_cli(threaded);
    EXPECT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GoldenReports) {
    EXPECT_EQ(run_cli({"info", "W", "4", "--format", "json"}).out, slurp(golden("info_W4.json")));
    EXPECT_EQ(run_cli({"check", "H", "5", "--format", "json"}).out, slurp(golden("check_H5.json")));
    EXPECT_EQ(run_cli({"certify", "H", "5", "--format", "json"}).out, slurp(golden("certify_H5.json")));
}

TEST(Cli, EnvironmentOverrides) {
    ::setenv("CARTANSUPER_FAMILY", "H", 1);
    ::setenv("CARTANSUPER_N", "5", 1);
    ::setenv("CARTANSUPER_FORMAT", "json", 1);
    Result r = run_cli({"info"});
    ::unsetenv("CARTANSUPER_FAMILY");
    ::unsetenv("CARTANSUPER_N");
    ::unsetenv("CARTANSUPER_FORMAT");
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["dim_L"], 30);
}

TEST(Cli, ExecutableExitCodes) {
    const std::string exe = CARTANSUPER_EXE;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    EXPECT_EQ(status("info W 4"), kOk);
    EXPECT_EQ(status("build H 4"), kInputError);
    EXPECT_EQ(status("certify W 4 --budget 1"), kInconclusive);
}
