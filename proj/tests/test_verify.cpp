#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "a2ops/verify.hpp"

using namespace a2ops;

namespace {

VerifyOptions quick() {
    VerifyOptions o;
    o.trials = 10;
    return o;
}

std::string scrub_elapsed(const std::string& json_text) {
    auto j = nlohmann::ordered_json::parse(json_text);
    for (auto& c : j["checks"]) c["elapsed_seconds"] = 0.0;
    return j.dump(2);
}

}  // namespace

TEST_CASE("commutativity suite passes for solution families") {
    for (const char* fam : {"rational", "hyperbolic", "trig", "elliptic"}) {
        VerifyOptions o = quick();
        o.family = fam;
        o.coupling = Rational::of(37, 100);
        const auto rep = check_commutativity(o);
        CHECK(rep.all_passed());
        CHECK(rep.checks.size() == 3);  // two exact rows + one numeric row
        CHECK(rep.checks[0].mode == "exact");
        CHECK(rep.checks[2].samples == 10);
        CHECK(rep.checks[2].worst_residual < 1e-9);
    }
}

TEST_CASE("commutativity sweeps the coupling when unset") {
    VerifyOptions o = quick();
    const auto rep = check_commutativity(o);
    CHECK(rep.checks.size() == 6);  // 2 exact + 4 sweep values
    CHECK(rep.all_passed());
    CHECK(rep.checks[2].name == "commute[Q1,P2]@hyperbolic k=1/2");
    CHECK(rep.checks[5].name == "commute[Q1,P2]@hyperbolic k=37/100");
}

TEST_CASE("functional equation suite") {
    VerifyOptions o = quick();
    o.trials = 50;
    o.family = "rational";
    const auto rational = check_functional_equation(o);
    CHECK(rational.all_passed());
    CHECK(rational.checks.size() == 2);
    CHECK(rational.checks[0].mode == "exact");

    o.family = "trig";
    CHECK(check_functional_equation(o).all_passed());

    o.family = "invcosh";
    const auto control = check_functional_equation(o);
    CHECK_FALSE(control.all_passed());
    CHECK(control.checks[0].worst_residual > 1e-3);
}

TEST_CASE("equivariance, gauge, and group suites are exact passes") {
    const VerifyOptions o = quick();
    const auto eq = check_equivariance(o);
    CHECK(eq.all_passed());
    CHECK(eq.checks.size() == 5);

    const auto gauge = check_gauge(o);
    CHECK(gauge.all_passed());
    CHECK(gauge.checks.size() == 2);
    CHECK(gauge.checks[1].notes.find("certified") != std::string::npos);

    const auto group = check_group_consistency(o);
    CHECK(group.all_passed());
    CHECK(group.checks.size() == 6);
    int on_shell = 0;
    for (const auto& c : group.checks) on_shell += (c.mode == "on-shell");
    CHECK(on_shell == 2);
}

TEST_CASE("tolerance override reaches numeric rows") {
    VerifyOptions o = quick();
    o.coupling = Rational(1);
    o.tolerance = 1e-30;
    const auto rep = check_commutativity(o);
    CHECK_FALSE(rep.all_passed());
    CHECK(rep.checks[2].tolerance == 1e-30);
}

TEST_CASE("full run passes with controls inverted") {
    VerifyOptions o = quick();
    o.coupling = Rational(1);  // one coupling value keeps this fast
    const auto rep = run_all(o);
    CHECK(rep.all_passed());
    // 2 exact + 4 numeric commute + 1 exact + 4 numeric funceq + 5 + 2 + 6 + 3 controls
    CHECK(rep.checks.size() == 27);
    int controls = 0;
    for (const auto& c : rep.checks)
        if (c.name.rfind("control[", 0) == 0) {
            ++controls;
            CHECK(c.pass);
        }
    CHECK(controls == 3);
    CHECK(rep.text().find("overall: PASS") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    VerifyOptions o = quick();
    o.coupling = Rational(1);
    const auto rep1 = run_all(o);
    const auto rep2 = run_all(o);
    CHECK(rep1.text() == rep2.text());
    CHECK(scrub_elapsed(rep1.json()) == scrub_elapsed(rep2.json()));

    VerifyOptions par = o;
    par.jobs = 4;
    CHECK(run_all(par).text() == rep1.text());

    VerifyOptions other = o;
    other.seed = 99;
    const auto rep3 = check_commutativity(other);
    const auto repA = check_commutativity(o);
    CHECK(rep3.checks[2].worst_point != repA.checks[2].worst_point);
}

TEST_CASE("json structure round-trips") {
    VerifyOptions o = quick();
    o.family = "rational";
    const auto rep = check_functional_equation(o);
    const auto j = nlohmann::ordered_json::parse(rep.json());
    CHECK(j["overall_pass"].get<bool>());
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][1]["samples"].get<int>() == 10);
    CHECK(j["checks"][1]["worst_point"].size() == 3);
}
