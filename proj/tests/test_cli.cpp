#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace semirandom::cli;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "semirandom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("seed lists") {
    CHECK(parse_seeds("7") == std::vector<std::uint64_t>{7});
    CHECK(parse_seeds("1..4") == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(parse_seeds("3,1..2,9") == std::vector<std::uint64_t>{3, 1, 2, 9});
    CHECK(parse_seeds("1..20").size() == 20);
    for (const char* bad : {"", "a", "4..2", "1..", "..3", "1,,2", "-1", "1...3"})
        CHECK_THROWS_AS(parse_seeds(bad), std::invalid_argument);
}

TEST_CASE("point lists") {
    const auto p = parse_points("0,0.5,ln2");
    REQUIRE(p.size() == 3);
    CHECK(p[2] == doctest::Approx(0.6931471805599453));
    for (const char* bad : {"", "x", "0.5x", "-1", "inf"}) CHECK_THROWS_AS(parse_points(bad), std::invalid_argument);
}

TEST_CASE("usage errors exit 1") {
    CHECK(call({}).code == kExitUsage);
    CHECK(call({"nonsense"}).code == kExitUsage);
    CHECK(call({"ode"}).code == kExitUsage);  // --system is required
    CHECK(call({"ode", "--system", "other"}).code == kExitUsage);
    CHECK(call({"oracle", "--graph", "g.txt", "--count", "3"}).code == kExitUsage);  // conflicting flags
    CHECK(call({"simulate-lower", "--n", "100", "--seeds", "5..1"}).code == kExitUsage);
    CHECK(call({"simulate-lower", "--n", "100", "--delta", "1.5"}).code == kExitUsage);
    CHECK(call({"verify-p", "--starts", "0"}).code == kExitUsage);
    CHECK(call({"lowerbound", "--format", "xml"}).code == kExitUsage);
    CHECK(call({"ode", "--system", "problematic", "--step", "0.01"}).code == kExitUsage);
    const auto h = call({"--help"});
    CHECK(h.code == kExitOk);
    CHECK(h.out.find("simulate-upper") != std::string::npos);
    CHECK(call({"simulate-upper", "--help"}).out.find("CSV columns") != std::string::npos);
}

TEST_CASE("ode prints the problematic density at ln 2") {
    const auto r = call({"ode", "--system", "problematic", "--at", "ln2", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("points")[0].at("x111").get<double>() == doctest::Approx(0.0004035).epsilon(1e-4));
    CHECK(j.at("xi").get<double>() == doctest::Approx(0.000403491684490506));
    CHECK(j.at("config").at("system") == "problematic");
}

TEST_CASE("lowerbound table ends with the final constant") {
    const auto r = call({"lowerbound", "--points", "5"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("# config ", 0) == 0);
    CHECK(r.out.find("delta,eps1,tau,eps2,eps1_plus_eps2\n") != std::string::npos);
    CHECK(r.out.find("# eps_final 2.403404") != std::string::npos);
}

TEST_CASE("oracle agrees on random graphs") {
    const auto r = call({"oracle", "--count", "30", "--seed", "4", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out).at("mismatches") == 0);
}

TEST_CASE("identical config gives identical bytes") {
    const std::vector<std::vector<std::string>> cmds = {
        {"simulate-upper", "--n", "2000", "--seeds", "1..3"},
        {"simulate-upper", "--n", "2000", "--seeds", "1..3", "--format", "json"},
        {"simulate-lower", "--n", "3000", "--seeds", "1..4", "--format", "json"},
        {"oracle", "--count", "12"},
    };
    for (auto cmd : cmds) {
        auto one = cmd, many = cmd;
        one.insert(one.end(), {"--workers", "1"});
        many.insert(many.end(), {"--workers", "3"});
        const auto a = call(one), b = call(many), c = call(one);
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
    const auto a = call({"simulate-lower", "--n", "3000", "--seeds", "1"});
    const auto b = call({"simulate-lower", "--n", "3000", "--seeds", "2"});
    CHECK(a.out != b.out);
}

TEST_CASE("simulate-upper reports Hamilton cycles") {
    const auto r = call({"simulate-upper", "--n", "3000", "--seeds", "5,6", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("runs").size() == 2);
    CHECK(j.at("summary").at("all_success") == true);
    CHECK(j.at("config").at("seeds") == nlohmann::json({5, 6}));
}

TEST_CASE("verify-p gate") {
    const auto r = call({"verify-p", "--starts", "1", "--seed", "1", "--max-outer", "6", "--budget", "0.06"});
    // The gate fails whenever a feasible f >= 0 or nothing feasible is found.
    const auto j = nlohmann::json::parse(r.out);
    const bool ok = j.at("summary").at("found").get<bool>() && j.at("summary").at("feasible_nonnegative") == 0;
    CHECK(r.code == (ok ? kExitOk : kExitGate));
    CHECK(j.at("config").at("command") == "verify-p");
    CHECK(j.at("runs").size() == 1);
}

TEST_CASE("output directory from the environment") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "semirandom_cli_test";
    fs::remove_all(dir);
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    auto r = call({"lowerbound", "--points", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    CHECK(slurp(dir / "lowerbound.csv").find("eps_final") != std::string::npos);
    r = call({"lowerbound", "--points", "3", "--format", "json", "-o", "sub/table.json"});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(slurp(dir / "sub" / "table.json")).at("table").size() == 3);
    ::unsetenv(kOutputDirEnv);
    fs::remove_all(dir);
}
