#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entvar/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "entvar");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = entvar::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("moments report") {
    const Run r = run({"moments", "--m", "2", "--n", "2"});
    REQUIRE(r.code == entvar::kExitPass);
    const auto doc = parse(r);
    CHECK(doc.contains("config"));
    CHECK(doc.contains("results"));
    CHECK(doc.contains("summary"));
    CHECK(doc["version"] == "1.0.0");
    CHECK(doc["config"]["m"] == 2);
    const auto& var = doc["results"][1];
    CHECK(var["quantity"] == "var_S");
    CHECK(var["exact"]["string"] == "13/36 - 1/30*pi^2");
    CHECK(var["exact"]["numeric"].get<double>() == doctest::Approx(0.032124297741465823817));
    CHECK(var["exact"]["terms"].size() == 2);
    // 17 significant digits.
    CHECK(r.out.find("0.33333333333333331") != std::string::npos);

    const auto trivial = parse(run({"moments", "--m", "1", "--n", "7"}));
    CHECK(trivial["results"][1]["exact"]["string"] == "0");
    CHECK(trivial["results"][1]["exact"]["numeric"].get<double>() == 0.0);
}

TEST_CASE("csv output") {
    const Run r = run({"moments", "--m", "2", "--n", "3", "--format", "csv"});
    REQUIRE(r.code == entvar::kExitPass);
    std::istringstream lines(r.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header.find("exact.string") != std::string::npos);
    CHECK(first.find("9/20") != std::string::npos);
    CHECK(first.find("0.45000000000000001") != std::string::npos);
    CHECK(first.find("mean_S") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"moments", "--m", "3", "--n", "2"}).code == entvar::kExitUsage);
    CHECK(run({"moments", "--m", "0", "--n", "2"}).code == entvar::kExitUsage);
    CHECK(run({"verify", "conjecture", "--max-n", "26"}).code == entvar::kExitUsage);
    CHECK(run({"oracle", "ib", "--m", "2", "--n", "9"}).code == entvar::kExitUsage);
    CHECK(run({"mc", "--m", "2", "--n", "2", "--samples", "999"}).code == entvar::kExitUsage);
    CHECK(run({"moments", "--m", "2", "--n", "2", "--format", "xml"}).code == entvar::kExitUsage);
    CHECK(run({"frobnicate"}).code == entvar::kExitUsage);
    CHECK(run({}).code == entvar::kExitUsage);
    const Run bad = run({"moments", "--m", "3", "--n", "2"});
    CHECK(bad.err.find("1 <= m <= n") != std::string::npos);
}

TEST_CASE("verify sweeps") {
    const Run c = run({"verify", "conjecture", "--max-n", "15"});
    CHECK(c.code == entvar::kExitPass);
    const auto doc = parse(c);
    CHECK(doc["summary"]["checked"] == 120);
    CHECK(doc["summary"]["pass"] == true);
    CHECK(doc["results"].size() == 120);

    const Run i = run({"verify", "identities", "--max", "20"});
    CHECK(i.code == entvar::kExitPass);
    const auto ids = parse(i);
    std::set<std::string> seen;
    for (const auto& row : ids["results"]) seen.insert(row["id"].get<std::string>());
    for (const char* id : {"A1", "A9", "A10", "A11", "A12", "WY1", "WY2", "MILGRAM", "HYP4F3"}) CHECK(seen.count(id) == 1);

    const Run k = run({"verify", "consolidation", "--max-n", "12"});
    CHECK(k.code == entvar::kExitPass);
    CHECK(parse(k)["summary"]["checked"] == 45);
}

TEST_CASE("oracle commands") {
    const Run a = run({"oracle", "ia", "--m", "1", "--n", "1", "--method", "symbolic"});
    CHECK(a.code == entvar::kExitPass);
    const auto da = parse(a);
    CHECK(da["results"][0]["exact_match"] == true);
    CHECK(da["results"][0]["abs_deviation"].get<double>() == 0.0);

    const Run b = run({"oracle", "ib", "--m", "1", "--n", "3", "--method", "quadrature"});
    CHECK(b.code == entvar::kExitPass);
    const auto db = parse(b);
    // (3 psi0(3) + 1)^2 from mpmath.
    CHECK(db["results"][0]["oracle"].get<double>() == doctest::Approx(14.200484372518883669).epsilon(1e-6));
    CHECK(db["results"][0]["converged"] == true);

    const Run c = run({"oracle", "ia", "--m", "3", "--n", "5"});
    CHECK(c.code == entvar::kExitPass);
    CHECK(parse(c)["results"][0]["exact_match"] == true);
}

TEST_CASE("mc report") {
    const Run r = run({"mc", "--m", "1", "--n", "5", "--samples", "5000", "--seed", "3", "--threads", "1"});
    CHECK(r.code == entvar::kExitPass);
    const auto doc = parse(r);
    CHECK(doc["config"]["seed"] == 3);
    CHECK(doc["config"]["samples"] == 5000);
    for (const auto& row : doc["results"]) {
        if (row["quantity"] == "var_S") {
            CHECK(row["estimate"].get<double>() == 0.0);
            CHECK(row["prediction"].get<double>() == 0.0);
        }
    }
    CHECK(doc["summary"]["invariants"]["pass"] == true);
}

TEST_CASE("mc output is byte-identical across thread counts") {
    const std::vector<std::string> base{"mc", "--m", "2", "--n", "3", "--samples", "30000", "--seed", "42"};
    auto with_threads = [&](const char* t) {
        auto args = base;
        args.push_back("--threads");
        args.push_back(t);
        return run(args).out;
    };
    const std::string one = with_threads("1");
    CHECK(one == with_threads("8"));
    CHECK(one == with_threads("3"));
}

TEST_CASE("thread count from the environment") {
    ::setenv(entvar::kThreadsEnv, "2", 1);
    const Run ok = run({"mc", "--m", "2", "--n", "2", "--samples", "2000", "--seed", "1"});
    CHECK(ok.code != entvar::kExitUsage);
    ::setenv(entvar::kThreadsEnv, "many", 1);
    CHECK(run({"mc", "--m", "2", "--n", "2", "--samples", "2000"}).code == entvar::kExitUsage);
    ::unsetenv(entvar::kThreadsEnv);
}

TEST_CASE("--out writes the report to a file") {
    const auto path = std::filesystem::temp_directory_path() / "entvar_cli_test_report.json";
    const Run r = run({"moments", "--m", "2", "--n", "2", "--out", path.string()});
    CHECK(r.code == entvar::kExitPass);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["results"][0]["exact"]["string"] == "1/3");
    std::filesystem::remove(path);
}

}
