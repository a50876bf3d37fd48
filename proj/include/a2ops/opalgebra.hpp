#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a2ops/diffring.hpp"
#include "a2ops/elliptic.hpp"
#include "a2ops/rational.hpp"

namespace a2ops {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<std::complex<double>, 3>;
using CMat3 = std::array<std::complex<double>, 9>;  // row-major

// Multi-index of partial-derivative orders (n1, n2, n3).
struct MultiIndex {
    std::array<std::uint8_t, 3> n{};

    static MultiIndex of(int n1, int n2, int n3) {
        return MultiIndex{{static_cast<std::uint8_t>(n1), static_cast<std::uint8_t>(n2),
                           static_cast<std::uint8_t>(n3)}};
    }
    static MultiIndex unit(int axis) {
        MultiIndex m;
        m.n[axis] = 1;
        return m;
    }
    int order() const { return n[0] + n[1] + n[2]; }
    auto operator<=>(const MultiIndex&) const = default;
    std::string str() const;
};

template <typename T>
struct Mat3 {
    std::array<T, 9> m{};
    T& at(int r, int c) { return m[static_cast<std::size_t>(r) * 3 + c]; }
    const T& at(int r, int c) const { return m[static_cast<std::size_t>(r) * 3 + c]; }
    bool operator==(const Mat3&) const = default;
};

// Permutation of {0, 1, 2}; w[j] is the image of j.
struct WeylElement {
    std::array<int, 3> w{0, 1, 2};

    static WeylElement identity() { return {}; }
    static WeylElement transposition(int i, int j);
    // All six elements in a fixed deterministic order (identity first).
    static const std::vector<WeylElement>& all();

    WeylElement inverse() const;
    int sign() const;
    std::string str() const;  // e.g. "[2,1,3]": images of 1,2,3 in one-based form
    bool operator==(const WeylElement&) const = default;

    // Composition of maps: (v * u)(x) = v(u(x)).
    friend WeylElement operator*(const WeylElement& v, const WeylElement& u) {
        WeylElement r;
        for (int x = 0; x < 3; ++x) r.w[x] = v.w[u.w[x]];
        return r;
    }
};

// Matrix-valued differential operator: a finite sum of terms A_alpha(t)
// partial^alpha with 3x3 DiffPoly coefficient matrices. Operators act on the
// left, so compose(D, E) applies E first.
class MatDiffOp {
  public:
    MatDiffOp() : table_(nullptr) {}
    static MatDiffOp zero(const GeneratorTable& t) { return MatDiffOp(&t); }
    // The identity operator: partial^0 with the identity matrix.
    static MatDiffOp identity(const GeneratorTable& t);
    // f * partial^alpha * I
    static MatDiffOp scalar_term(const GeneratorTable& t, const MultiIndex& alpha,
                                 const DiffPoly& f);

    const GeneratorTable* table() const { return table_; }
    const std::map<MultiIndex, Mat3<DiffPoly>>& terms() const { return terms_; }

    // Builder access; a polynomial over a different table throws.
    void add_entry(const MultiIndex& alpha, int row, int col, const DiffPoly& p);
    void add_scalar(const MultiIndex& alpha, const DiffPoly& p);
    void add_matrix(const MultiIndex& alpha, const Mat3<DiffPoly>& a);

    bool is_zero() const { return terms_.empty(); }
    int max_order() const;

    MatDiffOp operator-() const;
    MatDiffOp& operator+=(const MatDiffOp& o);
    MatDiffOp& operator-=(const MatDiffOp& o);
    friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp& b) { return a += b; }
    friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp& b) { return a -= b; }
    MatDiffOp scaled(const Rational& c) const;
    MatDiffOp scaled(const DiffPoly& f) const;  // left multiplication by f * I

    MatDiffOp substitute_param(Param p, const Rational& value) const;

    // Coefficient-wise canonical equality (same terms, same matrices).
    bool operator==(const MatDiffOp& o) const { return terms_ == o.terms_; }

  private:
    explicit MatDiffOp(const GeneratorTable* t) : table_(t) {}
    void require_table(const DiffPoly& p);
    void prune();

    const GeneratorTable* table_;
    std::map<MultiIndex, Mat3<DiffPoly>> terms_;

    friend MatDiffOp compose(const MatDiffOp&, const MatDiffOp&);
    friend MatDiffOp weyl_transform(const MatDiffOp&, const WeylElement&);
    friend MatDiffOp perm_conjugate(const MatDiffOp&, const WeylElement&);
};

// Operator composition D after E via the Leibniz expansion
//   A partial^alpha (B partial^beta) =
//     A * sum_{gamma <= alpha} binom(alpha, gamma) (partial^{alpha-gamma} B) partial^{gamma+beta}.
MatDiffOp compose(const MatDiffOp& D, const MatDiffOp& E);
MatDiffOp commutator(const MatDiffOp& D, const MatDiffOp& E);

// Coordinate action of the permutation: partial_j -> partial_{w^{-1}(j)} and
// g(t_p - t_q) -> +-g(t_{w^{-1}(p)} - t_{w^{-1}(q)}), with the sign tracking
// odd generators whose pair gets reoriented. Matrix entries stay in place.
MatDiffOp weyl_transform(const MatDiffOp& D, const WeylElement& w);

// Matrix conjugation P_w D P_w^{-1} by the permutation matrix
// (P_w)_{ij} = delta_{i, w(j)}; entry (i, j) receives entry (w^{-1}(i),
// w^{-1}(j)). Paired with weyl_transform at the same element, equality is
// the equivariance property of the symmetric catalog operators.
MatDiffOp perm_conjugate(const MatDiffOp& D, const WeylElement& w);

// Gauge conjugation: replaces each partial_i by partial_i - chi_i, which is
// conjugation by the integrating factor whose log-gradient is chi. Requires
// the chi_i to have symmetric cross-derivatives (a gradient field), so the
// first-order factors commute.
MatDiffOp conjugate_by_gauge(const MatDiffOp& D, const std::array<DiffPoly, 3>& chi);

// Full symbol at (t, lambda): sum_alpha A_alpha(t) lambda^alpha.
CMat3 full_symbol(const MatDiffOp& D, const PotentialBackend& backend, const Vec3& t,
                  const CVec3& lambda, std::optional<double> k = std::nullopt);

// Symbol with lambda3 eliminated through lambda1 + lambda2 + lambda3 = 0,
// keyed by (lambda1-degree, lambda2-degree).
std::map<std::array<int, 2>, Mat3<DiffPoly>> on_shell_symbol(const MatDiffOp& D);

// Exact coefficient-wise equality after restricting the symbol to the
// trace-zero shell.
bool equal_on_shell(const MatDiffOp& D, const MatDiffOp& E);

struct SampleSpec {
    std::uint64_t seed = 0;
    int count = 100;
    double box = 2.0;
    double guard = kGuardRadius;
    int jobs = 1;
};

struct ResidualStats {
    double worst = 0.0;
    Vec3 worst_point{};
    int samples = 0;
};

// Draws one regular point for the backend from the per-index substream;
// throws SamplingExhaustedError after too many rejected draws.
Vec3 sample_regular_point(const PotentialBackend& backend, const SampleSpec& spec,
                          std::uint64_t index);

// Max-entry magnitude of D's coefficients at random regular points, scaled by
// the largest coefficient magnitude of the normalizing operators at the same
// point. Deterministic for fixed seed regardless of jobs.
ResidualStats numeric_residual(const MatDiffOp& D, const std::vector<const MatDiffOp*>& normalizers,
                               const PotentialBackend& backend, std::optional<double> k,
                               const SampleSpec& spec);

using VecFn = std::function<CVec3(const Vec3&)>;

// Applies D to a smooth vector function by second-order centered finite
// differences with step h (tensor-product stencils per axis).
CVec3 fd_apply(const MatDiffOp& D, const VecFn& f, const Vec3& t, double h,
               const PotentialBackend& backend, std::optional<double> k = std::nullopt);

}  // namespace a2ops
