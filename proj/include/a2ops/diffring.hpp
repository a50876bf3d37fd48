#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a2ops/errors.hpp"
#include "a2ops/rational.hpp"

namespace a2ops {

class PotentialBackend;  // numeric evaluation backend, see elliptic.hpp

// Coordinate pair (i, j) with i < j, 0-based, in lexicographic order.
enum class Pair : std::uint8_t { T12 = 0, T13 = 1, T23 = 2 };

// Function symbols attached to a pair argument t_i - t_j.
//   Beta      : odd potential function
//   BetaPrime : its derivative (even)
//   Coth      : odd companion available in the hyperbolic model only
enum class GenKind : std::uint8_t { Beta = 0, BetaPrime = 1, Coth = 2 };

// Scalar indeterminates carried alongside the function symbols.
enum class Param : std::uint8_t { K = 0, A = 1, B = 2 };

constexpr int pair_first(Pair p) { return p == Pair::T23 ? 1 : 0; }
constexpr int pair_second(Pair p) { return p == Pair::T12 ? 1 : 2; }

inline Pair pair_of(int i, int j) {
    if (i == 0 && j == 1) return Pair::T12;
    if (i == 0 && j == 2) return Pair::T13;
    if (i == 1 && j == 2) return Pair::T23;
    throw DomainError("pair_of: indices must satisfy 0 <= i < j <= 2");
}

// Sign of d(t_i - t_j)/dt_axis for the pair's argument.
constexpr int chain_sign(Pair p, int axis) {
    return (axis == pair_first(p) ? 1 : 0) - (axis == pair_second(p) ? 1 : 0);
}

// The argument flip t -> -t negates Beta and Coth, fixes BetaPrime.
constexpr bool odd_under_flip(GenKind k) { return k != GenKind::BetaPrime; }

constexpr int kGenSlots = 9;
constexpr int kNumSlots = 12;

constexpr int gen_slot(Pair p, GenKind k) {
    return static_cast<int>(p) * 3 + static_cast<int>(k);
}
constexpr int param_slot(Param p) { return kGenSlots + static_cast<int>(p); }
constexpr Pair slot_pair(int slot) { return static_cast<Pair>(slot / 3); }
constexpr GenKind slot_kind(int slot) { return static_cast<GenKind>(slot % 3); }

std::string pair_name(Pair p);          // "12", "13", "23"
std::string slot_name(int slot);        // "beta_12", "betap_13", "coth_23", "k", "A", "B"
std::string slot_latex(int slot);       // "\beta(t_{12})", ...

// Exponent vector over the 9 generator slots followed by the 3 parameter
// slots. Total order is lexicographic on the slot array, which realizes
// (pair, kind, param)-major ordering.
struct Monomial {
    std::array<std::uint8_t, kNumSlots> e{};

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_constant() const { return degree() == 0; }

    // Slot-lexicographic with higher exponents ranked first, so iteration in
    // ascending map order lists pair-12 terms before pair-13 terms before
    // parameters, and the constant term last.
    std::strong_ordering operator<=>(const Monomial& o) const {
        for (int s = 0; s < kNumSlots; ++s)
            if (e[s] != o.e[s]) return o.e[s] <=> e[s];
        return std::strong_ordering::equal;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

class DiffPoly;

// Rewrite/derivation data for one family of models. Three fixed tables exist:
//   solution()         Beta, BetaPrime over symbolic (A, B); the generic family
//   hyperbolic()       Beta, BetaPrime, Coth with the 1/sinh relations baked in
//   inv_cosh_control() Beta, BetaPrime with the 1/cosh relations (non-solution)
class GeneratorTable {
  public:
    enum class Id : std::uint8_t { Solution = 0, Hyperbolic = 1, InvCoshControl = 2 };

    static const GeneratorTable& solution();
    static const GeneratorTable& hyperbolic();
    static const GeneratorTable& inv_cosh_control();

    Id id() const { return id_; }
    const std::string& name() const { return name_; }
    bool supports(GenKind k) const { return kinds_[static_cast<int>(k)]; }
    bool supports_param(Param p) const { return params_[static_cast<int>(p)]; }

    // d(generator)/d(argument) as a polynomial over this table.
    const DiffPoly& arg_derivative(Pair p, GenKind k) const;

    struct Reduction {
        Monomial lhs;          // divides a monomial iff the rule applies
        const DiffPoly* rhs;   // replacement for lhs
    };
    // First applicable reduction for the monomial, if any.
    std::optional<Reduction> find_reduction(const Monomial& m) const;

    GeneratorTable(const GeneratorTable&) = delete;
    GeneratorTable& operator=(const GeneratorTable&) = delete;

  private:
    GeneratorTable(Id id, std::string name);

    Id id_;
    std::string name_;
    std::array<bool, 3> kinds_{};
    std::array<bool, 3> params_{};
    std::vector<DiffPoly> deriv_store_;
    std::array<int, kGenSlots> deriv_index_;
    std::vector<std::pair<Monomial, DiffPoly>> rules_;
};

// Exact polynomial in the table's generators and parameters with rational
// coefficients, kept in canonical (fully reduced) form at all times.
// A default-constructed DiffPoly is the zero polynomial over any table.
class DiffPoly {
  public:
    DiffPoly() : table_(nullptr) {}

    static DiffPoly zero(const GeneratorTable& t) { return DiffPoly(&t); }
    static DiffPoly constant(const GeneratorTable& t, const Rational& c);
    static DiffPoly gen(const GeneratorTable& t, Pair p, GenKind k, int exp = 1);
    static DiffPoly param(const GeneratorTable& t, Param p, int exp = 1);

    const GeneratorTable* table() const { return table_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    // Canonical-form zero test. Identities that relate different pairs (for
    // example addition laws linking t_12, t_13, t_23) are deliberately not
    // rewrite rules, so a polynomial that vanishes as a function through such
    // an identity can still report false here.
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(DiffPoly a, const DiffPoly& b) { return a *= b; }
    DiffPoly scaled(const Rational& c) const;

    // d/dt_axis, axis in {0, 1, 2}.
    DiffPoly derive(int axis) const;

    // Substitutes an exact value for a parameter.
    DiffPoly substitute_param(Param p, const Rational& value) const;
    int max_param_degree(Param p) const;

    // Numeric value at t. The K parameter, if present, must be supplied.
    // Evaluation guards the singular set of the pairs that occur in the
    // polynomial; a violation raises SingularPointError.
    double eval(const PotentialBackend& backend, const std::array<double, 3>& t,
                std::optional<double> k = std::nullopt) const;

    // Largest absolute value any single term attains at t (coefficient times
    // generator powers); used to scale residuals.
    double eval_term_scale(const PotentialBackend& backend, const std::array<double, 3>& t,
                           std::optional<double> k = std::nullopt) const;

    std::string str() const;
    std::string latex() const;

  private:
    friend class GeneratorTable;
    explicit DiffPoly(const GeneratorTable* t) : table_(t) {}

    void require_same_table(const DiffPoly& o) const;
    void add_term(const Monomial& m, const Rational& c);
    // terms += c * rest * p (no reduction)
    void accumulate_product(const Monomial& rest, const Rational& c, const DiffPoly& p);
    void canonicalize();

    const GeneratorTable* table_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace a2ops
