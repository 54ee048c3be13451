#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gamma_envelope/cli.hpp"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "gamma-envelope");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = gamma_envelope::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("bounds at a point") {
    const auto r = invoke({"bounds", "--family", "qi_guo", "--x", "0.5", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["points"][0]["lower"].get<double>() == doctest::Approx(0.857131).epsilon(1e-6));
    CHECK(j["points"][0]["upper"].get<double>() == doctest::Approx(0.900109).epsilon(1e-6));
    CHECK(j["points"][0]["reference"].get<double>() == doctest::Approx(0.886227).epsilon(1e-6));
    CHECK(j["all_contained"] == true);
}

TEST_CASE("every family sweep passes") {
    for (const char* fam : {"ivady", "qi_guo", "qi_guo_extended", "qi_guo_rearranged", "lambda6", "alzer_power",
                            "alzer_batir", "qi_guo_zhang", "batir_12", "batir_14", "batir_15", "unitball"}) {
        CAPTURE(fam);
        const auto r = invoke({"bounds", "--family", fam, "--grid", "500", "--format", "csv"});
        CHECK(r.code == 0);
        CHECK(r.out.find(",no\n") == std::string::npos);
    }
}

TEST_CASE("a wrong exponent is detected with exit 1") {
    const auto up = invoke({"bounds", "--family", "qi_guo", "--beta", "0.5782156649015329", "--format", "csv"});
    CHECK(up.code == 1);
    CHECK(up.out.find(",no\n") != std::string::npos);
    const auto down = invoke({"bounds", "--family", "qi_guo", "--alpha", "0.8445686701969343", "--format", "csv"});
    CHECK(down.code == 1);
    // a weaker but valid exponent is fine
    CHECK(invoke({"bounds", "--family", "qi_guo", "--beta", "0.5", "--grid", "500"}).code == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({"audit", "--format", "xml"}).code == 2);
    CHECK(invoke({"audit", "--grid", "50"}).code == 2);
    CHECK(invoke({"bounds", "--family", "nope"}).code == 2);
    CHECK(invoke({"bounds", "--family", "ivady", "--alpha", "1"}).code == 2);
    CHECK(invoke({"bounds", "--family", "qi_guo", "--x", "1.5"}).code == 2);
    CHECK(invoke({"monotone", "--interval", "1", "0"}).code == 2);
    CHECK(invoke({"monotone", "--function", "nope"}).code == 2);
    CHECK(invoke({"conjecture"}).code == 2);
    CHECK(invoke({"conjecture", "cm", "--max-order", "9"}).code == 2);
    CHECK(invoke({"conjecture", "cm", "--interval", "0.1", "0.12"}).code == 2);
    const auto r = invoke({"bounds", "--family", "nope"});
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("sub-commands pass on defaults") {
    CHECK(invoke({"audit", "--grid", "10000", "--format", "markdown"}).code == 0);
    const auto lemma = invoke({"lemma2", "--format", "json"});
    REQUIRE(lemma.code == 0);
    const auto j = nlohmann::json::parse(lemma.out);
    CHECK(j["certificates"].size() == 4);
    CHECK(j["h2"]["verdict"] == "pass");
    CHECK(invoke({"compare"}).code == 0);
    CHECK(invoke({"compare", "--side", "upper", "--family", "qi_guo", "--family", "ivady"}).code == 0);
    CHECK(invoke({"monotone"}).code == 0);
    CHECK(invoke({"monotone", "--lambda", "6", "--direction", "decreasing"}).code == 0);
    CHECK(invoke({"monotone", "--function", "q1", "--direction", "decreasing"}).code == 0);
    CHECK(invoke({"monotone", "--function", "F_unitball", "--interval", "0.501", "50"}).code == 0);
    CHECK(invoke({"conjecture", "cm"}).code == 0);
    CHECK(invoke({"conjecture", "ratio-global"}).code == 0);
    CHECK(invoke({"conjecture", "tau"}).code == 0);
    CHECK(invoke({"openproblem-lambda", "--grid", "2000", "--lambda-tol", "1e-3"}).code == 0);
    CHECK(invoke({"polygamma-check"}).code == 0);
}

TEST_CASE("violations exit 1") {
    CHECK(invoke({"monotone", "--direction", "decreasing", "--grid", "200"}).code == 1);
    CHECK(invoke({"monotone", "--lambda", "3", "--grid", "1000"}).code == 1);
    CHECK(invoke({"conjecture", "cm", "--function", "F_unitball", "--interval", "0.6", "5", "--max-order", "1"}).code == 1);
}

TEST_CASE("csv format") {
    const auto r = invoke({"conjecture", "tau", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("function_id,a,b,grid_n,direction,violations,min_abs_diff,verdict\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
    CHECK(r.out.find('\r') == std::string::npos);
    const auto cmp = invoke({"compare", "--family", "qi_guo", "--family", "unitball", "--interval", "0.6", "0.9",
                             "--grid", "100", "--format", "csv"});
    REQUIRE(cmp.code == 0);
    CHECK(cmp.out.rfind("x,qi_guo_lower,qi_guo_upper,unitball_upper,winner_lower,winner_upper\n", 0) == 0);
}

TEST_CASE("deterministic output and --out") {
    const std::vector<std::vector<std::string>> commands = {
        {"compare", "--grid", "500", "--format", "csv"},
        {"compare", "--grid", "500", "--format", "json"},
        {"audit", "--grid", "1000", "--format", "json"},
        {"openproblem-lambda", "--grid", "1000", "--lambda-tol", "1e-3", "--format", "csv"},
        {"conjecture", "cm", "--format", "json"},
    };
    for (const auto& c : commands) {
        const auto a = invoke(c);
        const auto b = invoke(c);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "gamma_envelope_cli_1.csv";
    const auto p2 = dir / "gamma_envelope_cli_2.csv";
    CHECK(invoke({"bounds", "--grid", "300", "--format", "csv", "--out", p1.string()}).code == 0);
    CHECK(invoke({"bounds", "--grid", "300", "--format", "csv", "--out", p2.string()}).code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1) == invoke({"bounds", "--grid", "300", "--format", "csv"}).out);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
    const auto bad = invoke({"audit", "--out", "/nonexistent-dir/x/report.md"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("cannot open") != std::string::npos);
}
