// Verification suites over the operator catalog.
//
// Each suite returns a report of named checks.  Exact checks decide equality
// in the generator ring (or by the exponential zero certificate); numeric
// checks sample random regular points and report a normalized worst residual.
// Reports are deterministic for a fixed seed, excluding elapsed times.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "a2ops/rational.hpp"

namespace a2ops {

struct VerifyOptions {
    std::string family = "hyperbolic";  // rational|hyperbolic|trig|elliptic|invcosh
    double a = 1.0;                     // elliptic scale
    double kappa = 0.5;                 // elliptic modulus parameter
    std::optional<Rational> coupling;   // fixed k; otherwise a standard sweep
    int trials = 100;                   // sample count per numeric check
    std::uint64_t seed = 0;
    std::optional<double> tolerance;    // overrides per-check defaults
    double box = 2.0;                   // sampling box half-width
    int jobs = 1;
    // Operator pair for the sampled commutator check.
    std::array<std::string, 2> ops = {"Q1", "P2"};
};

struct CheckResult {
    std::string name;
    std::string mode;  // "exact", "numeric", or "on-shell"
    bool pass = false;
    double worst_residual = 0.0;
    std::array<double, 3> worst_point{0.0, 0.0, 0.0};
    int samples = 0;  // 0 for exact checks; worst_point is then meaningless
    std::uint64_t seed = 0;
    double tolerance = 0.0;  // 0 for exact checks
    double elapsed_seconds = 0.0;
    std::string notes;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    // Fixed-width table; byte-identical across runs with equal options.
    std::string text() const;
    // Structured form; identical across runs except elapsed_seconds fields.
    std::string json() const;
};

// Exact vanishing of the commutators with the first-order symmetric operator,
// plus sampled residuals of the central commutator for the selected family.
VerificationReport check_commutativity(const VerifyOptions& opts);

// The addition-type identity satisfied by the potential functions, sampled
// for the selected family; for the rational family also proved exactly.
VerificationReport check_functional_equation(const VerifyOptions& opts);

// Transforming coefficients and permuting matrix slots agree for every
// symmetric-group element on the symmetric catalog operators.
VerificationReport check_equivariance(const VerifyOptions& opts);

// Conjugating the cosh-ratio forms by the density gradient reproduces the
// reciprocal-sinh forms, with symbolic coupling.
VerificationReport check_gauge(const VerifyOptions& opts);

// The six fixed-coupling operators agree with the parameterized family on
// the trace-zero shell.
VerificationReport check_group_consistency(const VerifyOptions& opts);

// Every suite over the standard families, plus inverted negative-control
// checks (the deliberately wrong potential must be detected).
VerificationReport run_all(const VerifyOptions& opts);

}  // namespace a2ops
