#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "a2ops/cli.hpp"

using a2ops::run_cli;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verification subcommands succeed and fail honestly") {
    CHECK(run({"verify", "gauge"}).code == 0);
    CHECK(run({"verify", "equivariance"}).out.find("overall: PASS") != std::string::npos);
    CHECK(run({"verify", "group"}).code == 0);
    CHECK(run({"verify", "commute", "--family", "trig", "--k", "1", "--trials", "5"}).code == 0);

    // The deliberately wrong potential is reported as a failure, exit 1.
    const CliRun control = run({"verify", "funceq", "--family", "invcosh", "--trials", "20"});
    CHECK(control.code == 1);
    CHECK(control.out.find("FAIL") != std::string::npos);
}

TEST_CASE("json report output") {
    const CliRun r =
        run({"verify", "funceq", "--family", "rational", "--trials", "5", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["overall_pass"].get<bool>());
    CHECK(j["checks"][0]["mode"].get<std::string>() == "exact");
    CHECK(j["checks"][1]["samples"].get<int>() == 5);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "/tmp/a2ops_cli_report.json";
    const CliRun r = run({"verify", "gauge", "--format", "json", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    const auto j = nlohmann::ordered_json::parse(ss.str());
    CHECK(j["overall_pass"].get<bool>());
}

TEST_CASE("show renders operators in three formats") {
    const CliRun latex = run({"show", "Q1", "--format", "latex"});
    CHECK(latex.code == 0);
    CHECK(latex.out.find("\\begin{pmatrix}") != std::string::npos);
    CHECK(latex.out.find("\\beta(t_{12})") != std::string::npos);

    const CliRun symbolic = run({"show", "Q1"});
    CHECK(symbolic.out.find("beta_12*k") != std::string::npos);
    const CliRun fixed = run({"show", "Q1", "--k", "1"});
    CHECK(fixed.code == 0);
    CHECK(fixed.out.find("beta_12") != std::string::npos);
    CHECK(fixed.out.find("*k") == std::string::npos);

    const CliRun j = run({"show", "P1", "--format", "json"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::ordered_json::parse(j.out);
    CHECK(parsed["name"].get<std::string>() == "P1");
    CHECK(parsed["terms"].size() == 3);
    // Structured coefficient form: exact coefficient plus (symbol, exponent) pairs.
    const auto& diag = parsed["terms"][0]["matrix"][0][0];
    CHECK(diag.size() == 1);
    CHECK(diag[0]["coefficient"].get<std::string>() == "1");
    CHECK(diag[0]["monomial"].empty());

    const CliRun jq = run({"show", "Q1", "--format", "json"});
    const auto parsed_q = nlohmann::ordered_json::parse(jq.out);
    bool beta_seen = false;
    for (const auto& term : parsed_q["terms"])
        for (const auto& row : term["matrix"])
            for (const auto& entry : row)
                for (const auto& t : entry)
                    for (const auto& sym : t["monomial"])
                        beta_seen = beta_seen || sym["symbol"].get<std::string>() == "beta_12";
    CHECK(beta_seen);

    CHECK(run({"show", "casimir_su6"}).code == 0);
}

TEST_CASE("eval computes the full symbol") {
    const CliRun r = run({"eval", "P1", "--point", "0.9,0.1,-0.7", "--lambda", "1,2,3",
                          "--family", "rational", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["symbol"][0][0][0].get<double>() == doctest::Approx(6.0));
    CHECK(j["symbol"][0][1][0].get<double>() == doctest::Approx(0.0));
    CHECK(j["symbol"][1][1][0].get<double>() == doctest::Approx(6.0));

    // On-shell substitution zeroes the trace of the first-order symbol.
    const CliRun os = run({"eval", "P1", "--point", "0.9,0.1,-0.7", "--lambda", "1,2,0",
                           "--on-shell", "--format", "json"});
    CHECK(os.code == 0);
    const auto js = nlohmann::ordered_json::parse(os.out);
    CHECK(js["symbol"][0][0][0].get<double>() == doctest::Approx(0.0));

    // A provided l3 consistent with the shell is accepted, an inconsistent
    // one is a constraint violation.
    CHECK(run({"eval", "P1", "--point", "0.9,0.1,-0.7", "--lambda", "1,2,-3", "--on-shell"})
              .code == 0);
    CHECK(run({"eval", "P1", "--point", "0.9,0.1,-0.7", "--lambda", "1,2,5", "--on-shell"})
              .code == 2);
}

TEST_CASE("the commutator pair can be chosen") {
    const CliRun r = run({"verify", "commute", "--ops", "tildeQ1,tildeP2", "--family",
                          "hyperbolic", "--k", "1", "--trials", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("commute[tildeQ1,tildeP2]@hyperbolic") != std::string::npos);
    CHECK(run({"verify", "commute", "--ops", "Q1,ZZ", "--k", "1"}).code == 2);
}

TEST_CASE("usage and domain errors exit with code 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "nonsense"}).code == 2);
    CHECK(run({"show", "Q3"}).code == 2);
    CHECK(run({"verify", "commute", "--family", "elliptic", "--a", "0", "--k", "1",
               "--trials", "2"})
              .code == 2);
    CHECK(run({"verify", "commute", "--k", "abc"}).code == 2);
    // Singular evaluation point: two coordinates coincide.
    CHECK(run({"eval", "Q1", "--point", "0.5,0.5,1.0"}).code == 2);
    const CliRun help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
    CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("config file supplies defaults") {
    const std::string path = "/tmp/a2ops_cli_config.ini";
    {
        std::ofstream f(path);
        f << "[verify]\ntrials=7\n";
    }
    const CliRun r = run({"verify", "funceq", "--family", "trig", "--format", "json",
                          "--config", path});
    CHECK(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["checks"][0]["samples"].get<int>() == 7);

    // Same through the environment variable.
    setenv("A2OPS_CONFIG", path.c_str(), 1);
    const CliRun env = run({"verify", "funceq", "--family", "trig", "--format", "json"});
    unsetenv("A2OPS_CONFIG");
    CHECK(env.code == 0);
    auto je = nlohmann::ordered_json::parse(env.out);
    CHECK(je["checks"][0]["samples"].get<int>() == 7);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args = {"verify", "commute", "--family", "trig",
                                           "--k",    "1/2",     "--trials", "8"};
    CHECK(run(args).out == run(args).out);
}
