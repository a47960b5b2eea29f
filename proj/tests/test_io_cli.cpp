#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riesz/profile_io.hpp"
#include "riesz/radial.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace riesz;

#ifndef RIESZ_CLI_PATH
#define RIESZ_CLI_PATH ""
#endif

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/rieszweak_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const std::string& stdout_path = "/dev/null") {
    const std::string cmd =
        std::string(RIESZ_CLI_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string sample_profile_json() {
    // decreasing grid profile with a power tail
    nlohmann::json j;
    std::vector<double> nodes, values;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.05 * i;
        nodes.push_back(x);
        values.push_back(std::pow(1.0 + x * x, -3.0));
    }
    j["nodes"] = nodes;
    j["values"] = values;
    j["monotone"] = true;
    j["tail"] = {{"A", 1.0}, {"beta", 6.0}};
    j["cutoff"] = nullptr;
    return j.dump();
}

} // namespace

TEST_CASE("profile JSON round trip") {
    const auto f = parse_profile_json(sample_profile_json());
    CHECK(f.monotone_decreasing());
    REQUIRE(f.tail());
    CHECK(f.tail()->exponent == 6.0);
    CHECK(f(0.05) == doctest::Approx(std::pow(1.0025, -3.0)).epsilon(1e-10));
    CHECK(f(20.0) == doctest::Approx(std::pow(20.0, -6.0)).epsilon(1e-12));

    const auto text = profile_to_json(f);
    const auto g = parse_profile_json(text);
    CHECK(g(1.23) == doctest::Approx(f(1.23)).epsilon(1e-12));
}

TEST_CASE("parse errors carry a line number") {
    const std::string broken = "{\n  \"nodes\": [0, 1],\n  \"values\": [1, , ]\n}";
    try {
        parse_profile_json(broken);
        FAIL("expected a parse error");
    } catch (const std::exception& e) {
        const std::string what = e.what();
        CHECK(what.find(":3:") != std::string::npos);
    }
}

TEST_CASE("cli: potential subcommand") {
    const auto profile = temp_path("profile.json");
    write_file(profile, sample_profile_json());
    const auto out = temp_path("potential.csv");

    CHECK(run_cli("potential --profile " + profile + " --n 3 --s 1 --radii 0,0.5,1 --out " + out) ==
          0);
    const auto csv = read_file(out);
    CHECK(csv.rfind("rho,I_s,M_s", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    // empty radii: header only
    CHECK(run_cli("potential --profile " + profile + " --n 3 --s 1 --out " + out) == 0);
    const auto header_only = read_file(out);
    CHECK(std::count(header_only.begin(), header_only.end(), '\n') == 1);

    // malformed file: diagnostic and exit 2
    const auto bad = temp_path("bad.json");
    write_file(bad, "{\"nodes\": [0, 1], \"values\": [1]}");
    CHECK(run_cli("potential --profile " + bad + " --n 3 --s 1 --radii 1") == 2);
    // missing file
    CHECK(run_cli("potential --profile /nonexistent.json --n 3 --s 1 --radii 1") == 2);
    // usage error
    CHECK(run_cli("potential --n 3 --s 1") == 2);
}

TEST_CASE("cli: bounds subcommand") {
    const auto out = temp_path("bounds.csv");
    CHECK(run_cli("bounds --n 3 --s-min 1e-4 --s-max 0.24 --steps 5 --out " + out) == 0);
    const auto csv = read_file(out);
    CHECK(csv.rfind("n,s,lower,exact_floor,witness_ratio,upper,tau_bound", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    const auto out_json = temp_path("bounds.json");
    CHECK(run_cli("bounds --n 3 --s-min 0.01 --s-max 0.2 --steps 3 --format json --out " +
                  out_json) == 0);
    const auto doc = nlohmann::json::parse(read_file(out_json));
    CHECK(doc.at("schema") == 1);
    REQUIRE(doc.at("rows").size() == 3);
    CHECK(doc["rows"][0].contains("exact_floor"));
    CHECK(doc["rows"][0].contains("tau_bound"));

    CHECK(run_cli("bounds --n 3 --s-min 0.2 --s-max 0.1 --steps 3") == 2);
    CHECK(run_cli("bounds --n 3 --s-min 0.01 --s-max 0.2 --steps 3 --format yaml") == 2);

    // tau comparison table rides along
    const auto tau_out = temp_path("tau.csv");
    CHECK(run_cli("bounds --n 3 --s-min 0.01 --s-max 0.2 --steps 3 --out " + out +
                  " --tau-table " + tau_out) == 0);
    const auto tau_csv = read_file(tau_out);
    CHECK(tau_csv.rfind("n,s,tau_printed,tau_minimized,upper_bound,ratio", 0) == 0);
    CHECK(std::count(tau_csv.begin(), tau_csv.end(), '\n') == 4);
}

TEST_CASE("cli: verify subcommand, exit codes and determinism") {
    const auto out1 = temp_path("report1.json");
    const auto out2 = temp_path("report2.json");
    const std::string args = "verify --n 3 --s 2.9 --suite thm13 --out ";
    CHECK(run_cli(args + out1) == 0); // flagged outside the window, no failures
    CHECK(run_cli(args + out2) == 0);

    auto doc1 = nlohmann::json::parse(read_file(out1));
    auto doc2 = nlohmann::json::parse(read_file(out2));
    CHECK(doc1.at("schema") == 1);
    CHECK(doc1.at("summary").at("fail") == 0);
    CHECK(doc1["summary"]["flagged"].get<int>() >= 1);

    // byte-identical modulo runtime fields
    for (auto* d : {&doc1, &doc2})
        for (auto& c : (*d)["checks"]) c["runtime_ms"] = 0.0;
    CHECK(doc1.dump() == doc2.dump());

    // mismatched n/s lists: usage error
    CHECK(run_cli("verify --n 3 --n 5 --s 1") == 2);
    CHECK(run_cli("verify --n 3 --s 1 --suite nosuch") == 2);
}
