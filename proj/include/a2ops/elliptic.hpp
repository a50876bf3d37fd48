#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "a2ops/diffring.hpp"
#include "a2ops/errors.hpp"

namespace a2ops {

// Evaluation keeps this far away from any pole of the coefficients.
constexpr double kGuardRadius = 0.05;
// Hard floor on |sn| when it sits in a denominator.
constexpr double kSnFloor = 1e-8;

struct EllipticTriple {
    double sn;
    double cn;
    double dn;
};

// Jacobi functions of real argument, parameter kappa in [0, 1]
// (so dn^2 + kappa * sn^2 = 1). Descending Landen / AGM scheme.
EllipticTriple jacobi_sn_cn_dn(double x, double kappa);

// Complete integral of the first kind in the parameter convention; the
// quarter period of sn. Returns +infinity at kappa = 1.
double elliptic_K(double kappa);

enum class Family { Rational, Hyperbolic, Trig, Elliptic, InvCoshControl };

// Numeric model of one potential family: the function beta, its derivatives,
// and the geometry of its singular set. Immutable after construction.
class PotentialBackend {
  public:
    static PotentialBackend rational() { return PotentialBackend(Family::Rational, 1.0, 0.0); }
    static PotentialBackend hyperbolic() { return PotentialBackend(Family::Hyperbolic, 1.0, 0.0); }
    static PotentialBackend trig() { return PotentialBackend(Family::Trig, 1.0, 0.0); }
    static PotentialBackend elliptic(double a, double kappa);
    static PotentialBackend inv_cosh_control() {
        return PotentialBackend(Family::InvCoshControl, 1.0, 0.0);
    }
    // Accepts "rational", "hyperbolic", "trig", "elliptic", "invcosh".
    static PotentialBackend from_name(const std::string& name, double a = 1.0, double kappa = 0.5);

    Family family() const { return family_; }
    std::string name() const;
    double a() const { return a_; }
    double kappa() const { return kappa_; }

    // False exactly for the control family, whose beta solves a different
    // closure equation on purpose.
    bool is_solution() const { return family_ != Family::InvCoshControl; }

    // The (A, B) pair closing beta'^2 = (beta^2 + A)(beta^2 + B); absent for
    // the control family.
    std::optional<std::pair<double, double>> ab() const;

    // Generator table whose rewrite rules are valid identities of this family.
    const GeneratorTable& table() const;

    double beta(double t) const;
    double beta_prime(double t) const;
    // Derivatives of beta at t, orders 0..max_order. Orders >= 2 come from
    // the closure recurrence beta'' = c3*beta^3 + c1*beta differentiated
    // formally, so they are exact consequences of (A, B).
    std::vector<double> beta_derivs(double t, int max_order) const;

    double gen_value(GenKind kind, double dt) const;

    // Distance from dt to the nearest pole of beta (+infinity if none).
    double singular_distance(double dt) const;

    // Factor in (0, 1] shrinking a sampling box of half-width `box` so that
    // coordinate differences stay within one period cell of beta.
    double box_scale(double box) const;

  private:
    PotentialBackend(Family f, double a, double kappa) : family_(f), a_(a), kappa_(kappa) {}

    Family family_;
    double a_;
    double kappa_;
};

// Product over pairs i < j of sinh(t_i - t_j)^k. For non-integer exponents
// this needs the positive chamber t1 > t2 > t3; outside it, integer k falls
// back to signed powers, half-integer k to the square root of the full
// product when that is nonnegative, and anything else is a domain error.
double delta_half(double k, const std::array<double, 3>& t);

}  // namespace a2ops
