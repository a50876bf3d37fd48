#include "a2ops/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace a2ops {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kAgmMaxIter = 32;
constexpr double kAgmTol = 1e-15;

}  // namespace

EllipticTriple jacobi_sn_cn_dn(double x, double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("jacobi_sn_cn_dn: kappa must lie in [0, 1]");
    if (kappa > 1.0 - 1e-12) {
        // Degenerate quarter period: sn -> tanh, cn, dn -> sech.
        const double s = 1.0 / std::cosh(x);
        return {std::tanh(x), s, s};
    }

    // Descending Landen transformation via the AGM.
    double a[kAgmMaxIter + 1];
    double c[kAgmMaxIter + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(kappa);
    double b = std::sqrt(1.0 - kappa);
    int n = 0;
    while (n < kAgmMaxIter && std::fabs(c[n]) > kAgmTol) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }

    double phi = std::ldexp(a[n] * x, n);
    for (int i = n; i > 0; --i) {
        const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }

    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // Positive branch is correct for real x, kappa in [0, 1]; this choice
    // makes dn^2 + kappa sn^2 = 1 hold by construction.
    const double dn = std::sqrt(std::max(0.0, 1.0 - kappa * sn * sn));
    return {sn, cn, dn};
}

double elliptic_K(double kappa) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("elliptic_K: kappa must lie in [0, 1]");
    if (kappa == 1.0) return std::numeric_limits<double>::infinity();
    double a = 1.0;
    double b = std::sqrt(1.0 - kappa);
    for (int i = 0; i < kAgmMaxIter && std::fabs(a - b) > kAgmTol; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

PotentialBackend PotentialBackend::elliptic(double a, double kappa) {
    if (a == 0.0 || !std::isfinite(a)) throw DomainError("elliptic family requires finite a != 0");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("elliptic family requires kappa in [0, 1]");
    return PotentialBackend(Family::Elliptic, a, kappa);
}

PotentialBackend PotentialBackend::from_name(const std::string& name, double a, double kappa) {
    if (name == "rational") return rational();
    if (name == "hyperbolic") return hyperbolic();
    if (name == "trig") return trig();
    if (name == "elliptic") return elliptic(a, kappa);
    if (name == "invcosh") return inv_cosh_control();
    throw DomainError("unknown family '" + name +
                      "' (expected rational|hyperbolic|trig|elliptic|invcosh)");
}

std::string PotentialBackend::name() const {
    switch (family_) {
        case Family::Rational: return "rational";
        case Family::Hyperbolic: return "hyperbolic";
        case Family::Trig: return "trig";
        case Family::Elliptic: {
            std::ostringstream os;
            os << "elliptic(a=" << a_ << ",kappa=" << kappa_ << ")";
            return os.str();
        }
        case Family::InvCoshControl: return "invcosh";
    }
    return "?";
}

std::optional<std::pair<double, double>> PotentialBackend::ab() const {
    switch (family_) {
        case Family::Rational: return std::make_pair(0.0, 0.0);
        case Family::Hyperbolic: return std::make_pair(1.0, 0.0);
        case Family::Trig: return std::make_pair(-1.0, 0.0);
        case Family::Elliptic: return std::make_pair(-a_ * a_, -kappa_ * a_ * a_);
        case Family::InvCoshControl: return std::nullopt;
    }
    return std::nullopt;
}

const GeneratorTable& PotentialBackend::table() const {
    switch (family_) {
        case Family::Hyperbolic: return GeneratorTable::hyperbolic();
        case Family::InvCoshControl: return GeneratorTable::inv_cosh_control();
        default: return GeneratorTable::solution();
    }
}

double PotentialBackend::beta(double t) const {
    switch (family_) {
        case Family::Rational: return 1.0 / t;
        case Family::Hyperbolic: return 1.0 / std::sinh(t);
        case Family::Trig: return 1.0 / std::sin(t);
        case Family::Elliptic: {
            const EllipticTriple j = jacobi_sn_cn_dn(a_ * t, kappa_);
            if (std::fabs(j.sn) < kSnFloor)
                throw SingularPointError("beta evaluated at a zero of sn");
            return a_ / j.sn;
        }
        case Family::InvCoshControl: return 1.0 / std::cosh(t);
    }
    return 0.0;
}

double PotentialBackend::beta_prime(double t) const {
    switch (family_) {
        case Family::Rational: return -1.0 / (t * t);
        case Family::Hyperbolic: {
            const double s = std::sinh(t);
            return -std::cosh(t) / (s * s);
        }
        case Family::Trig: {
            const double s = std::sin(t);
            return -std::cos(t) / (s * s);
        }
        case Family::Elliptic: {
            const EllipticTriple j = jacobi_sn_cn_dn(a_ * t, kappa_);
            if (std::fabs(j.sn) < kSnFloor)
                throw SingularPointError("beta' evaluated at a zero of sn");
            return -a_ * a_ * j.cn * j.dn / (j.sn * j.sn);
        }
        case Family::InvCoshControl: {
            const double c = std::cosh(t);
            return -std::sinh(t) / (c * c);
        }
    }
    return 0.0;
}

namespace {

// Sparse bivariate polynomial in (x, y) = (beta, beta'), doubles as exact
// small-integer coefficients in practice.
using Poly2 = std::map<std::pair<int, int>, double>;

Poly2 poly2_x(int i, int j, double c) { return {{{i, j}, c}}; }

void poly2_add(Poly2& p, const Poly2& q, double scale) {
    for (const auto& [m, c] : q) {
        auto [it, inserted] = p.emplace(m, c * scale);
        if (!inserted) it->second += c * scale;
    }
}

// d/dt with xdot = y, ydot = c3 x^3 + c1 x.
Poly2 poly2_time_derivative(const Poly2& p, double c3, double c1) {
    Poly2 out;
    for (const auto& [m, c] : p) {
        const auto [i, j] = m;
        if (i > 0) poly2_add(out, poly2_x(i - 1, j + 1, 1.0), c * i);
        if (j > 0) {
            poly2_add(out, poly2_x(i + 3, j - 1, 1.0), c * j * c3);
            poly2_add(out, poly2_x(i + 1, j - 1, 1.0), c * j * c1);
        }
    }
    return out;
}

double poly2_eval(const Poly2& p, double x, double y) {
    double s = 0.0;
    for (const auto& [m, c] : p) {
        double v = c;
        for (int i = 0; i < m.first; ++i) v *= x;
        for (int j = 0; j < m.second; ++j) v *= y;
        s += v;
    }
    return s;
}

}  // namespace

std::vector<double> PotentialBackend::beta_derivs(double t, int max_order) const {
    if (max_order < 0) throw DomainError("beta_derivs: max_order must be nonnegative");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_order) + 1);
    const double b0 = beta(t);
    out.push_back(b0);
    if (max_order == 0) return out;
    const double b1 = beta_prime(t);
    out.push_back(b1);

    double c3 = 2.0;
    double c1 = 0.0;
    if (family_ == Family::InvCoshControl) {
        c3 = -2.0;
        c1 = 1.0;
    } else {
        const auto [A, B] = *ab();
        c1 = A + B;
    }
    Poly2 p = poly2_x(3, 0, c3);
    poly2_add(p, poly2_x(1, 0, 1.0), c1);
    for (int n = 2; n <= max_order; ++n) {
        out.push_back(poly2_eval(p, b0, b1));
        if (n < max_order) p = poly2_time_derivative(p, c3, c1);
    }
    return out;
}

double PotentialBackend::gen_value(GenKind kind, double dt) const {
    switch (kind) {
        case GenKind::Beta: return beta(dt);
        case GenKind::BetaPrime: return beta_prime(dt);
        case GenKind::Coth:
            if (family_ != Family::Hyperbolic)
                throw DomainError("coth generator is only valid for the hyperbolic family");
            return std::cosh(dt) / std::sinh(dt);
    }
    throw DomainError("unknown generator kind");
}

double PotentialBackend::singular_distance(double dt) const {
    switch (family_) {
        case Family::Rational:
        case Family::Hyperbolic: return std::fabs(dt);
        case Family::Trig: return std::fabs(dt - kPi * std::round(dt / kPi));
        case Family::Elliptic: {
            const double K = elliptic_K(kappa_);
            if (!std::isfinite(K)) return std::fabs(dt);
            const double cell = 2.0 * K / std::fabs(a_);
            return std::fabs(dt - cell * std::round(dt / cell));
        }
        case Family::InvCoshControl: return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

double PotentialBackend::box_scale(double box) const {
    if (family_ != Family::Elliptic || box <= 0.0) return 1.0;
    const double K = elliptic_K(kappa_);
    if (!std::isfinite(K)) return 1.0;
    // Max coordinate difference is 2 * scale * box; keep it inside 90% of the
    // pole spacing 2K/a.
    const double cell = 2.0 * K / std::fabs(a_);
    return std::min(1.0, 0.9 * cell / (2.0 * box));
}

double delta_half(double k, const std::array<double, 3>& t) {
    const double s12 = std::sinh(t[0] - t[1]);
    const double s13 = std::sinh(t[0] - t[2]);
    const double s23 = std::sinh(t[1] - t[2]);
    for (double s : {s12, s13, s23})
        if (s == 0.0) throw SingularPointError("delta_half at coincident coordinates");
    if (k == 0.0) return 1.0;
    if (s12 > 0.0 && s13 > 0.0 && s23 > 0.0)
        return std::exp(k * (std::log(s12) + std::log(s13) + std::log(s23)));
    const double kr = std::round(k);
    if (std::fabs(k - kr) < 1e-12)
        return std::pow(s12, kr) * std::pow(s13, kr) * std::pow(s23, kr);
    const double k2r = std::round(2.0 * k);
    if (std::fabs(2.0 * k - k2r) < 1e-12) {
        const double full = std::pow(s12 * s13 * s23, k2r);
        if (full < 0.0)
            throw DomainError("delta_half undefined outside the chamber for this exponent");
        return std::sqrt(full);
    }
    throw DomainError("delta_half with non-integer exponent requires the chamber t1 > t2 > t3");
}

}  // namespace a2ops
