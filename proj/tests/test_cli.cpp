#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_core.hpp"
#include "json.hpp"

using heckecli::RunReport;
using heckecli::run_command;
using nlohmann::ordered_json;

namespace {

std::string temp_path(const char* name) {
    const char* dir = std::getenv("TMPDIR");
    return std::string(dir ? dir : "/tmp") + "/" + name;
}

ordered_json load_golden(const std::string& name) {
    const std::string path = std::string(HECKE_GOLDEN_DIR) + "/" + name;
    std::ifstream f(path);
    REQUIRE_MESSAGE(f.good(), "missing golden file " << path);
    ordered_json j;
    f >> j;
    return j;
}

// Reports must agree field-for-field; numbers to 1e-9 relative, the
// wall clock not at all.
void check_equivalent(const ordered_json& live, const ordered_json& golden,
                      const std::string& where) {
    if (golden.is_object()) {
        REQUIRE_MESSAGE(live.is_object(), where << ": expected an object");
        auto lit = live.begin();
        for (auto git = golden.begin(); git != golden.end(); ++git, ++lit) {
            REQUIRE_MESSAGE(lit != live.end(), where << ": missing key " << git.key());
            CHECK_MESSAGE(lit.key() == git.key(),
                          where << ": key order differs (" << lit.key() << " vs "
                                << git.key() << ")");
            check_equivalent(lit.value(), git.value(), where + "." + git.key());
        }
        CHECK_MESSAGE(lit == live.end(), where << ": extra keys in live report");
    } else if (golden.is_array()) {
        REQUIRE_MESSAGE(live.is_array(), where << ": expected an array");
        REQUIRE_MESSAGE(live.size() == golden.size(), where << ": size differs");
        for (std::size_t i = 0; i < golden.size(); ++i)
            check_equivalent(live[i], golden[i], where + "[" + std::to_string(i) + "]");
    } else if (golden.is_number()) {
        REQUIRE_MESSAGE(live.is_number(), where << ": expected a number");
        const double a = live.get<double>();
        const double b = golden.get<double>();
        CHECK_MESSAGE(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)),
                      where << ": " << a << " != " << b);
    } else {
        CHECK_MESSAGE(live == golden, where << ": value differs");
    }
}

void check_golden(const std::vector<std::string>& args, const std::string& name) {
    const RunReport report = run_command(args);
    CHECK_MESSAGE(report.exit_code == 0, name << ": " << report.err);
    ordered_json live = report.report;
    ordered_json golden = load_golden(name);
    live.erase("wall_clock_ms");
    golden.erase("wall_clock_ms");
    check_equivalent(live, golden, name);

    // stdout carries exactly the serialized report.
    ordered_json printed = ordered_json::parse(report.out);
    printed.erase("wall_clock_ms");
    check_equivalent(printed, golden, name + " (stdout)");
}

}  // namespace

TEST_CASE("golden reports: every printed number is the library's number") {
    check_golden({"bound", "gl2", "--lambdas", "1", "--ladder",
                  "3,5,8,17,27,38,49,61", "--json", "-"},
                 "gl2_eval.json");
    check_golden({"bound", "gl2", "--lambdas", "1,-1", "--ladder",
                  "10,23,30,36,45,54,72,81,90", "--json", "-"},
                 "gl2_pair.json");
    check_golden({"bound", "gl2", "--lambdas", "0.25,0.25,0.25,0.25",
                  "--no-twist-inequivalent", "--ladder",
                  "19,40,69,98,127,156,185,214,243", "--json", "-"},
                 "gl2_maass.json");
    check_golden({"bound", "rc", "--lambdas", "1,-1", "--json", "-"},
                 "rc_pair.json");
    check_golden({"bound", "congruence", "--n", "2", "--h", "4", "--json", "-"},
                 "congruence.json");
    check_golden({"bound", "split", "--n", "3", "--d", "3", "--json", "-"},
                 "split.json");
    check_golden({"bound", "product", "--nus", "1,0", "--json", "-"},
                 "product.json");
    check_golden({"bound", "interval", "--lambdas", "1,-1", "--a", "-2", "--b",
                  "2", "--json", "-"},
                 "interval.json");
    check_golden({"bound", "gln", "--lambdas", "1", "--poles", "3", "--x",
                  "9.47", "--json", "-"},
                 "gln_eval.json");
    check_golden({"empirical", "montecarlo", "--lambdas", "1", "--count",
                  "100000", "--seed", "42", "--json", "-"},
                 "montecarlo.json");
}

TEST_CASE("identical invocations give identical reports") {
    const std::vector<std::string> args = {"bound", "gl2", "--lambdas", "1,-1",
                                           "--ladder", "4,9,20", "--json", "-"};
    RunReport a = run_command(args);
    RunReport b = run_command(args);
    REQUIRE(a.exit_code == 0);
    a.report.erase("wall_clock_ms");
    b.report.erase("wall_clock_ms");
    CHECK(a.report == b.report);

    const std::vector<std::string> search = {
        "bound", "gl2",          "--lambdas", "1", "--search", "--m", "2",
        "--iterations", "3", "--seed", "5", "--json", "-"};
    RunReport c = run_command(search);
    RunReport d = run_command(search);
    REQUIRE_MESSAGE(c.exit_code == 0, c.err);
    c.report.erase("wall_clock_ms");
    d.report.erase("wall_clock_ms");
    CHECK(c.report == d.report);
    CHECK(c.report["seed"].get<std::uint64_t>() == 5);
}

TEST_CASE("human output prints six-significant-digit tables") {
    const RunReport report = run_command(
        {"bound", "gl2", "--lambdas", "1", "--ladder", "3,5,8,17,27,38,49,61"});
    REQUIRE(report.exit_code == 0);
    CHECK(report.out.find("value") != std::string::npos);
    CHECK(report.out.find("0.111668") != std::string::npos);  // %.6g
    CHECK(report.out.find('{') == std::string::npos);         // not JSON

    const RunReport rc = run_command({"bound", "rc", "--lambdas", "1"});
    CHECK(rc.out.find("0.125") != std::string::npos);
}

TEST_CASE("--json PATH writes the report file and keeps the table on stdout") {
    const std::string path = temp_path("hecke_report.json");
    const RunReport report =
        run_command({"bound", "congruence", "--n", "2", "--h", "3", "--json", path});
    REQUIRE(report.exit_code == 0);
    CHECK(report.out.find("0.0416667") != std::string::npos);
    std::ifstream f(path);
    REQUIRE(f.good());
    ordered_json j;
    f >> j;
    CHECK(j["results"][0]["value"].get<double>() ==
          doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    std::remove(path.c_str());
}

TEST_CASE("domain and usage errors exit nonzero with a message") {
    const RunReport unsorted = run_command(
        {"bound", "gl2", "--lambdas", "1", "--ladder", "9,3"});
    CHECK(unsorted.exit_code == 1);
    CHECK(unsorted.err.rfind("error: ", 0) == 0);

    const RunReport both = run_command({"bound", "gl2", "--lambdas", "1",
                                        "--ladder", "3,9", "--search"});
    CHECK(both.exit_code == 1);
    CHECK(both.err.find("exactly one") != std::string::npos);

    const RunReport unknown = run_command({"bound", "gl2", "--lambdas", "1",
                                           "--ladder", "3,9", "--frobnicate"});
    CHECK(unknown.exit_code != 0);
    CHECK(!unknown.err.empty());

    const RunReport missing = run_command({"bound"});
    CHECK(missing.exit_code != 0);

    const RunReport badlambda =
        run_command({"bound", "gl2", "--lambdas", "fish", "--ladder", "3,9"});
    CHECK(badlambda.exit_code == 1);
    CHECK(badlambda.err.find("not a number") != std::string::npos);

    const RunReport nothing = run_command({"reproduce", "--only", "nosuchkey"});
    CHECK(nothing.exit_code == 1);
}

TEST_CASE("complex coefficients parse in every written form") {
    const RunReport report =
        run_command({"bound", "gl2", "--lambdas", "0.5+0.3i,1i,-i,2",
                     "--ladder", "4,9", "--json", "-"});
    REQUIRE_MESSAGE(report.exit_code == 0, report.err);
    const auto& ls = report.report["inputs"]["lambdas"];
    REQUIRE(ls.size() == 4);
    CHECK(ls[0][0].get<double>() == 0.5);
    CHECK(ls[0][1].get<double>() == 0.3);
    CHECK(ls[1][0].get<double>() == 0.0);
    CHECK(ls[1][1].get<double>() == 1.0);
    CHECK(ls[2][1].get<double>() == -1.0);
    CHECK(ls[3][0].get<double>() == 2.0);
    CHECK(ls[3][1].get<double>() == 0.0);
}

TEST_CASE("threads come from the flag, the config file or the environment") {
    const std::string cfg = temp_path("hecke_threads.cfg");
    {
        std::ofstream f(cfg);
        f << "threads=3\n";
    }
    const RunReport from_config = run_command(
        {"--config", cfg, "bound", "gl2", "--lambdas", "1", "--ladder", "4,9",
         "--json", "-"});
    REQUIRE_MESSAGE(from_config.exit_code == 0, from_config.err);
    CHECK(from_config.report["inputs"]["threads"].get<int>() == 3);

    // A flag overrides the config file.
    const RunReport from_flag = run_command(
        {"--config", cfg, "--threads", "2", "bound", "gl2", "--lambdas", "1",
         "--ladder", "4,9", "--json", "-"});
    REQUIRE(from_flag.exit_code == 0);
    CHECK(from_flag.report["inputs"]["threads"].get<int>() == 2);

    setenv("HECKE_THREADS", "4", 1);
    const RunReport from_env = run_command(
        {"bound", "gl2", "--lambdas", "1", "--ladder", "4,9", "--json", "-"});
    unsetenv("HECKE_THREADS");
    REQUIRE(from_env.exit_code == 0);
    CHECK(from_env.report["inputs"]["threads"].get<int>() == 4);
    std::remove(cfg.c_str());
}

TEST_CASE("generate and density round trip through the CSV format") {
    const std::string csv = temp_path("hecke_cli_delta.csv");
    const RunReport gen = run_command(
        {"empirical", "generate", "delta", "--limit", "1000", "-o", csv});
    REQUIRE_MESSAGE(gen.exit_code == 0, gen.err);
    CHECK(gen.out.find(csv) != std::string::npos);

    const RunReport density = run_command(
        {"empirical", "density", "--table", csv, "--json", "-"});
    REQUIRE_MESSAGE(density.exit_code == 0, density.err);
    const auto& est = density.report["results"][0];
    CHECK(est["total"].get<int>() == 168);  // pi(1000)
    CHECK(est["predicate"].get<std::string>() == "a_p[delta] < 0");
    CHECK(est["limit"].get<int>() == 1000);

    const RunReport filtered = run_command(
        {"empirical", "density", "--table", csv, "--mod", "8", "--class", "1",
         "--predicate", "neg", "--json", "-"});
    REQUIRE(filtered.exit_code == 0);
    CHECK(filtered.report["results"][0]["filter"].get<std::string>() ==
          "p=1 (mod 8)");
    std::remove(csv.c_str());
}

TEST_CASE("reproduce --list names every row") {
    const RunReport report = run_command({"reproduce", "--list"});
    REQUIRE(report.exit_code == 0);
    for (const char* key :
         {"gl2-eval-0.1118", "gl2-search-m7", "gl2-pair-0.0414",
          "maass-congruence-0.0156", "gln-m3-0.001355", "gln-m7-3.49e-4",
          "rc-real-1-8", "product-1-32", "interval-root-1.3371",
          "inner-grid-oracle-20", "empirical-neg-density",
          "prop-bounds-closed-forms", "prop-optimizer-search",
          "prop-empirical-data"}) {
        CHECK_MESSAGE(report.out.find(key) != std::string::npos,
                      "missing row key " << key);
    }
}

TEST_CASE("a cheap reproduce row runs end to end") {
    const RunReport report =
        run_command({"reproduce", "--only", "rc-real", "--json", "-"});
    REQUIRE_MESSAGE(report.exit_code == 0, report.err);
    const auto& rows = report.report["results"][0]["rows"];
    REQUIRE(rows.size() == 2);  // rc-real-1-8 and rc-real-1-16
    for (const auto& row : rows) {
        CHECK(row["pass"].get<bool>());
        CHECK(row["criterion"].get<int>() == 5);
    }
}
