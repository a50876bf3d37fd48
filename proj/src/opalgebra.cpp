#include "a2ops/opalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "a2ops/rng.hpp"

namespace a2ops {

std::string MultiIndex::str() const {
    return "(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," + std::to_string(n[2]) +
           ")";
}

// ---------------------------------------------------------------------------
// WeylElement

WeylElement WeylElement::transposition(int i, int j) {
    if (i < 0 || j < 0 || i > 2 || j > 2 || i == j)
        throw DomainError("transposition needs two distinct indices in {0,1,2}");
    WeylElement r;
    std::swap(r.w[i], r.w[j]);
    return r;
}

const std::vector<WeylElement>& WeylElement::all() {
    static const std::vector<WeylElement> elems = [] {
        std::vector<WeylElement> v;
        std::array<int, 3> p{0, 1, 2};
        do {
            v.push_back(WeylElement{p});
        } while (std::next_permutation(p.begin(), p.end()));
        return v;
    }();
    return elems;
}

WeylElement WeylElement::inverse() const {
    WeylElement r;
    for (int x = 0; x < 3; ++x) r.w[w[x]] = x;
    return r;
}

int WeylElement::sign() const {
    int s = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (w[i] > w[j]) s = -s;
    return s;
}

std::string WeylElement::str() const {
    return "[" + std::to_string(w[0] + 1) + "," + std::to_string(w[1] + 1) + "," +
           std::to_string(w[2] + 1) + "]";
}

// ---------------------------------------------------------------------------
// MatDiffOp

MatDiffOp MatDiffOp::identity(const GeneratorTable& t) {
    MatDiffOp op(&t);
    const DiffPoly one = DiffPoly::constant(t, 1);
    Mat3<DiffPoly> id;
    for (int i = 0; i < 3; ++i) id.at(i, i) = one;
    op.terms_.emplace(MultiIndex{}, id);
    return op;
}

MatDiffOp MatDiffOp::scalar_term(const GeneratorTable& t, const MultiIndex& alpha,
                                 const DiffPoly& f) {
    MatDiffOp op(&t);
    op.add_scalar(alpha, f);
    return op;
}

void MatDiffOp::require_table(const DiffPoly& p) {
    if (!p.table()) return;
    if (!table_) {
        table_ = p.table();
        return;
    }
    if (p.table() != table_)
        throw TableMismatchError("operator over table '" + table_->name() +
                                 "' given a coefficient over table '" + p.table()->name() + "'");
}

void MatDiffOp::add_entry(const MultiIndex& alpha, int row, int col, const DiffPoly& p) {
    if (row < 0 || row > 2 || col < 0 || col > 2)
        throw DomainError("matrix entry indices must lie in {0,1,2}");
    if (p.is_zero()) return;
    require_table(p);
    auto [it, inserted] = terms_.emplace(alpha, Mat3<DiffPoly>{});
    it->second.at(row, col) += p;
    if (it->second == Mat3<DiffPoly>{}) terms_.erase(it);
}

void MatDiffOp::add_scalar(const MultiIndex& alpha, const DiffPoly& p) {
    for (int i = 0; i < 3; ++i) add_entry(alpha, i, i, p);
}

void MatDiffOp::add_matrix(const MultiIndex& alpha, const Mat3<DiffPoly>& a) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) add_entry(alpha, r, c, a.at(r, c));
}

int MatDiffOp::max_order() const {
    int m = 0;
    for (const auto& [alpha, a] : terms_) m = std::max(m, alpha.order());
    return m;
}

void MatDiffOp::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == Mat3<DiffPoly>{})
            it = terms_.erase(it);
        else
            ++it;
    }
}

MatDiffOp MatDiffOp::operator-() const {
    MatDiffOp r(*this);
    for (auto& [alpha, a] : r.terms_)
        for (auto& p : a.m) p = -p;
    return r;
}

MatDiffOp& MatDiffOp::operator+=(const MatDiffOp& o) {
    for (const auto& [alpha, a] : o.terms_) add_matrix(alpha, a);
    return *this;
}

MatDiffOp& MatDiffOp::operator-=(const MatDiffOp& o) {
    for (const auto& [alpha, a] : o.terms_)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) add_entry(alpha, r, c, -a.at(r, c));
    return *this;
}

MatDiffOp MatDiffOp::scaled(const Rational& c) const {
    MatDiffOp r(table_);
    if (c.is_zero()) return r;
    for (const auto& [alpha, a] : terms_) {
        Mat3<DiffPoly> b;
        for (int i = 0; i < 9; ++i) b.m[i] = a.m[i].scaled(c);
        r.terms_.emplace(alpha, b);
    }
    return r;
}

MatDiffOp MatDiffOp::scaled(const DiffPoly& f) const {
    MatDiffOp r(table_);
    for (const auto& [alpha, a] : terms_) {
        Mat3<DiffPoly> b;
        for (int i = 0; i < 9; ++i) b.m[i] = f * a.m[i];
        r.terms_.emplace(alpha, b);
    }
    r.prune();
    return r;
}

MatDiffOp MatDiffOp::substitute_param(Param p, const Rational& value) const {
    MatDiffOp r(table_);
    for (const auto& [alpha, a] : terms_) {
        Mat3<DiffPoly> b;
        for (int i = 0; i < 9; ++i) b.m[i] = a.m[i].substitute_param(p, value);
        r.terms_.emplace(alpha, b);
    }
    r.prune();
    return r;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

Mat3<DiffPoly> derive_matrix(const Mat3<DiffPoly>& a, int axis) {
    Mat3<DiffPoly> b;
    for (int i = 0; i < 9; ++i) b.m[i] = a.m[i].derive(axis);
    return b;
}

Mat3<DiffPoly> matmul(const Mat3<DiffPoly>& a, const Mat3<DiffPoly>& b) {
    Mat3<DiffPoly> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            DiffPoly s;
            for (int l = 0; l < 3; ++l) s += a.at(i, l) * b.at(l, j);
            r.at(i, j) = s;
        }
    return r;
}

// All gamma with gamma <= alpha componentwise.
std::vector<MultiIndex> lower_indices(const MultiIndex& alpha) {
    std::vector<MultiIndex> out;
    for (int g0 = 0; g0 <= alpha.n[0]; ++g0)
        for (int g1 = 0; g1 <= alpha.n[1]; ++g1)
            for (int g2 = 0; g2 <= alpha.n[2]; ++g2) out.push_back(MultiIndex::of(g0, g1, g2));
    return out;
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
    Rational r(1);
    for (int i = 0; i < 3; ++i) r *= binomial(alpha.n[i], gamma.n[i]);
    return r;
}

}  // namespace

MatDiffOp compose(const MatDiffOp& D, const MatDiffOp& E) {
    if (D.table_ && E.table_ && D.table_ != E.table_)
        throw TableMismatchError("cannot compose operators over different tables");
    MatDiffOp out(D.table_ ? D.table_ : E.table_);

    for (const auto& [beta, bmat] : E.terms_) {
        // Derivatives of this coefficient matrix, memoized by multi-index.
        std::map<MultiIndex, Mat3<DiffPoly>> derived;
        derived.emplace(MultiIndex{}, bmat);
        // Reduce along the first nonzero axis; recursion depth = |diff|.
        auto derived_impl = [&](const MultiIndex& d, auto&& rec) -> const Mat3<DiffPoly>& {
            auto found = derived.find(d);
            if (found != derived.end()) return found->second;
            for (int ax = 0; ax < 3; ++ax) {
                if (!d.n[ax]) continue;
                MultiIndex prev = d;
                prev.n[ax] -= 1;
                const Mat3<DiffPoly>& base = rec(prev, rec);
                return derived.emplace(d, derive_matrix(base, ax)).first->second;
            }
            return derived.at(MultiIndex{});
        };
        auto derived_matrix = [&](const MultiIndex& diff) -> const Mat3<DiffPoly>& {
            return derived_impl(diff, derived_impl);
        };

        for (const auto& [alpha, amat] : D.terms_) {
            for (const MultiIndex& gamma : lower_indices(alpha)) {
                MultiIndex diff;
                MultiIndex target;
                bool overflow = false;
                for (int i = 0; i < 3; ++i) {
                    diff.n[i] = static_cast<std::uint8_t>(alpha.n[i] - gamma.n[i]);
                    const int s = gamma.n[i] + beta.n[i];
                    if (s > 200) overflow = true;
                    target.n[i] = static_cast<std::uint8_t>(s);
                }
                if (overflow) throw DomainError("operator order overflow in compose");
                const Mat3<DiffPoly>& dB = derived_matrix(diff);
                Mat3<DiffPoly> prod = matmul(amat, dB);
                const Rational bin = multi_binomial(alpha, gamma);
                if (!bin.is_one())
                    for (auto& p : prod.m) p = p.scaled(bin);
                out.add_matrix(target, prod);
            }
        }
    }
    return out;
}

MatDiffOp commutator(const MatDiffOp& D, const MatDiffOp& E) {
    return compose(D, E) - compose(E, D);
}

// ---------------------------------------------------------------------------
// Symmetry actions

namespace {

DiffPoly weyl_transform_poly(const DiffPoly& p, const WeylElement& w) {
    if (!p.table()) return p;
    const GeneratorTable& table = *p.table();
    const WeylElement wi = w.inverse();
    DiffPoly out = DiffPoly::zero(table);
    for (const auto& [m, c] : p.terms()) {
        DiffPoly term = DiffPoly::constant(table, c);
        for (int s = 0; s < kGenSlots; ++s) {
            if (!m.e[s]) continue;
            const Pair pr = slot_pair(s);
            const GenKind kind = slot_kind(s);
            int a = wi.w[pair_first(pr)];
            int b = wi.w[pair_second(pr)];
            Rational sign(1);
            if (a > b) {
                std::swap(a, b);
                if (odd_under_flip(kind)) sign = Rational(-1);
            }
            DiffPoly g = DiffPoly::gen(table, pair_of(a, b), kind, m.e[s]);
            if (sign != Rational(1) && (m.e[s] % 2 == 1)) g = g.scaled(Rational(-1));
            term *= g;
        }
        for (Param par : {Param::K, Param::A, Param::B}) {
            const int e = m.e[param_slot(par)];
            if (e) term *= DiffPoly::param(table, par, e);
        }
        out += term;
    }
    return out;
}

}  // namespace

MatDiffOp weyl_transform(const MatDiffOp& D, const WeylElement& w) {
    MatDiffOp out(D.table_);
    for (const auto& [alpha, a] : D.terms_) {
        MultiIndex alpha2;
        for (int i = 0; i < 3; ++i) alpha2.n[i] = alpha.n[w.w[i]];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out.add_entry(alpha2, r, c, weyl_transform_poly(a.at(r, c), w));
    }
    return out;
}

MatDiffOp perm_conjugate(const MatDiffOp& D, const WeylElement& w) {
    MatDiffOp out(D.table_);
    const WeylElement wi = w.inverse();
    for (const auto& [alpha, a] : D.terms_)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out.add_entry(alpha, r, c, a.at(wi.w[r], wi.w[c]));
    return out;
}

MatDiffOp conjugate_by_gauge(const MatDiffOp& D, const std::array<DiffPoly, 3>& chi) {
    const GeneratorTable* table = D.table();
    for (const auto& c : chi)
        if (c.table()) table = c.table();
    if (!table) return D;

    // First-order factors S_i = partial_i - chi_i.
    std::array<MatDiffOp, 3> S{MatDiffOp::zero(*table), MatDiffOp::zero(*table),
                               MatDiffOp::zero(*table)};
    for (int i = 0; i < 3; ++i) {
        S[i].add_scalar(MultiIndex::unit(i), DiffPoly::constant(*table, 1));
        S[i].add_scalar(MultiIndex{}, -chi[i]);
    }

    // Gradient condition: the factors must commute for the substitution to be
    // a ring homomorphism.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(chi[j].derive(i) - chi[i].derive(j)).is_zero())
                throw DomainError("gauge conjugation requires a gradient field chi");

    std::map<MultiIndex, MatDiffOp> powers;
    powers.emplace(MultiIndex{}, MatDiffOp::identity(*table));
    auto power = [&](const MultiIndex& alpha) -> const MatDiffOp& {
        auto self = [&](const MultiIndex& a, auto&& rec) -> const MatDiffOp& {
            auto it = powers.find(a);
            if (it != powers.end()) return it->second;
            for (int axis = 0; axis < 3; ++axis) {
                if (!a.n[axis]) continue;
                MultiIndex prev = a;
                prev.n[axis] -= 1;
                const MatDiffOp& base = rec(prev, rec);
                return powers.emplace(a, compose(base, S[axis])).first->second;
            }
            return powers.at(MultiIndex{});
        };
        return self(alpha, self);
    };

    MatDiffOp out = MatDiffOp::zero(*table);
    for (const auto& [alpha, a] : D.terms()) {
        MatDiffOp coeff = MatDiffOp::zero(*table);
        coeff.add_matrix(MultiIndex{}, a);
        out += compose(coeff, power(alpha));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symbols and numeric evaluation

CMat3 full_symbol(const MatDiffOp& D, const PotentialBackend& backend, const Vec3& t,
                  const CVec3& lambda, std::optional<double> k) {
    CMat3 out{};
    for (const auto& [alpha, a] : D.terms()) {
        std::complex<double> lp(1.0, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < alpha.n[i]; ++j) lp *= lambda[i];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                const DiffPoly& p = a.at(r, c);
                if (p.is_zero()) continue;
                out[static_cast<std::size_t>(r) * 3 + c] += p.eval(backend, t, k) * lp;
            }
    }
    return out;
}

std::map<std::array<int, 2>, Mat3<DiffPoly>> on_shell_symbol(const MatDiffOp& D) {
    std::map<std::array<int, 2>, Mat3<DiffPoly>> out;
    for (const auto& [alpha, a] : D.terms()) {
        const int a3 = alpha.n[2];
        for (int j = 0; j <= a3; ++j) {
            // lambda3^a3 = (-1)^a3 sum_j C(a3, j) lambda1^j lambda2^(a3-j)
            Rational coef = binomial(static_cast<unsigned>(a3), static_cast<unsigned>(j));
            if (a3 % 2) coef = -coef;
            const std::array<int, 2> key{alpha.n[0] + j, alpha.n[1] + a3 - j};
            auto [it, inserted] = out.try_emplace(key);
            for (int e = 0; e < 9; ++e) it->second.m[e] += a.m[e].scaled(coef);
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == Mat3<DiffPoly>{})
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

bool equal_on_shell(const MatDiffOp& D, const MatDiffOp& E) {
    return on_shell_symbol(D - E).empty();
}

Vec3 sample_regular_point(const PotentialBackend& backend, const SampleSpec& spec,
                          std::uint64_t index) {
    SplitMix64 rng(mix_seed(spec.seed, index));
    const double s = backend.box_scale(spec.box);
    for (int tries = 0; tries < 1000; ++tries) {
        Vec3 t{};
        for (auto& x : t) x = rng.uniform(-s * spec.box, s * spec.box);
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = i + 1; j < 3 && ok; ++j)
                ok = backend.singular_distance(t[i] - t[j]) >= spec.guard;
        if (ok) return t;
    }
    throw SamplingExhaustedError("no regular sample point found within the retry budget");
}

namespace {

double max_coefficient_magnitude(const MatDiffOp& D, const PotentialBackend& backend, const Vec3& t,
                                 std::optional<double> k) {
    double m = 0.0;
    for (const auto& [alpha, a] : D.terms())
        for (const auto& p : a.m) {
            if (p.is_zero()) continue;
            m = std::max(m, std::fabs(p.eval(backend, t, k)));
        }
    return m;
}

}  // namespace

ResidualStats numeric_residual(const MatDiffOp& D, const std::vector<const MatDiffOp*>& normalizers,
                               const PotentialBackend& backend, std::optional<double> k,
                               const SampleSpec& spec) {
    struct Local {
        double worst = -1.0;
        Vec3 point{};
        std::uint64_t index = 0;
    };

    auto eval_point = [&](std::uint64_t idx) -> std::pair<double, Vec3> {
        const Vec3 t = sample_regular_point(backend, spec, idx);
        const double num = max_coefficient_magnitude(D, backend, t, k);
        double den = 0.0;
        for (const MatDiffOp* n : normalizers)
            den = std::max(den, max_coefficient_magnitude(*n, backend, t, k));
        den = std::max(den, 1e-12);
        return {num / den, t};
    };

    const int count = std::max(spec.count, 0);
    const int jobs = std::clamp(spec.jobs, 1, 64);
    std::vector<Local> locals(static_cast<std::size_t>(jobs));

    auto run_range = [&](int job, std::uint64_t lo, std::uint64_t hi) {
        Local& best = locals[static_cast<std::size_t>(job)];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const auto [res, t] = eval_point(i);
            if (res > best.worst || (res == best.worst && i < best.index)) {
                best.worst = res;
                best.point = t;
                best.index = i;
            }
        }
    };

    if (jobs == 1) {
        run_range(0, 0, static_cast<std::uint64_t>(count));
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk =
            (static_cast<std::uint64_t>(count) + static_cast<std::uint64_t>(jobs) - 1) /
            static_cast<std::uint64_t>(jobs);
        for (int j = 0; j < jobs; ++j) {
            const std::uint64_t lo = chunk * static_cast<std::uint64_t>(j);
            const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, static_cast<std::uint64_t>(count));
            if (lo >= hi) break;
            threads.emplace_back(run_range, j, lo, hi);
        }
        for (auto& th : threads) th.join();
    }

    ResidualStats stats;
    stats.samples = count;
    Local best;
    for (const Local& l : locals) {
        if (l.worst < 0) continue;
        if (l.worst > best.worst || (l.worst == best.worst && l.index < best.index)) best = l;
    }
    if (best.worst >= 0) {
        stats.worst = best.worst;
        stats.worst_point = best.point;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Finite-difference application

namespace {

struct StencilNode {
    double weight;
    int offset;  // in units of h
};

std::vector<StencilNode> stencil_1d(int order, double h) {
    switch (order) {
        case 0: return {{1.0, 0}};
        case 1: return {{-0.5 / h, -1}, {0.5 / h, 1}};
        case 2: {
            const double h2 = h * h;
            return {{1.0 / h2, -1}, {-2.0 / h2, 0}, {1.0 / h2, 1}};
        }
        case 3: {
            const double h3 = h * h * h;
            return {{-0.5 / h3, -2}, {1.0 / h3, -1}, {-1.0 / h3, 1}, {0.5 / h3, 2}};
        }
        case 4: {
            const double h4 = h * h * h * h;
            return {{1.0 / h4, -2}, {-4.0 / h4, -1}, {6.0 / h4, 0}, {-4.0 / h4, 1}, {1.0 / h4, 2}};
        }
        default: throw DomainError("finite-difference stencils support orders 0..4 only");
    }
}

}  // namespace

CVec3 fd_apply(const MatDiffOp& D, const VecFn& f, const Vec3& t, double h,
               const PotentialBackend& backend, std::optional<double> k) {
    if (!(h > 0)) throw DomainError("fd_apply requires a positive step");
    CVec3 out{};
    for (const auto& [alpha, a] : D.terms()) {
        const auto s0 = stencil_1d(alpha.n[0], h);
        const auto s1 = stencil_1d(alpha.n[1], h);
        const auto s2 = stencil_1d(alpha.n[2], h);
        CVec3 dval{};
        for (const auto& n0 : s0)
            for (const auto& n1 : s1)
                for (const auto& n2 : s2) {
                    const Vec3 p{t[0] + n0.offset * h, t[1] + n1.offset * h, t[2] + n2.offset * h};
                    const CVec3 fv = f(p);
                    const double w = n0.weight * n1.weight * n2.weight;
                    for (int i = 0; i < 3; ++i) dval[i] += w * fv[i];
                }
        for (int r = 0; r < 3; ++r) {
            std::complex<double> acc(0.0, 0.0);
            for (int c = 0; c < 3; ++c) {
                const DiffPoly& p = a.at(r, c);
                if (p.is_zero()) continue;
                acc += p.eval(backend, t, k) * dval[c];
            }
            out[r] += acc;
        }
    }
    return out;
}

}  // namespace a2ops
