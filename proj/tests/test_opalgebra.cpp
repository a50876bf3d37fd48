#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "a2ops/opalgebra.hpp"
#include "a2ops/rng.hpp"
#include "testutil.hpp"

using namespace a2ops;
using namespace a2ops::testutil;

namespace {

DiffPoly b(const GeneratorTable& t, Pair p, int e = 1) {
    return DiffPoly::gen(t, p, GenKind::Beta, e);
}

// Random operator of order <= 1 with small random coefficient polynomials.
MatDiffOp random_op(SplitMix64& rng, const GeneratorTable& table, int entries = 4) {
    MatDiffOp op = MatDiffOp::zero(table);
    for (int n = 0; n < entries; ++n) {
        MultiIndex alpha;
        alpha.n[rng.next_u64() % 3] = static_cast<std::uint8_t>(rng.next_u64() % 2);
        op.add_entry(alpha, static_cast<int>(rng.next_u64() % 3),
                     static_cast<int>(rng.next_u64() % 3), random_poly(rng, table, 2));
    }
    return op;
}

Mat3<std::complex<double>> to_mat(const CMat3& m) {
    Mat3<std::complex<double>> r;
    r.m = m;
    return r;
}

}  // namespace

TEST_CASE("weyl elements form the symmetric group") {
    const auto& all = WeylElement::all();
    REQUIRE(all.size() == 6);
    CHECK(all[0] == WeylElement::identity());
    int parity_sum = 0;
    for (const auto& w : all) parity_sum += w.sign();
    CHECK(parity_sum == 0);
    for (const auto& v : all) {
        CHECK((v * v.inverse()) == WeylElement::identity());
        for (const auto& u : all) {
            // Permutation matrices: P(v*u) = P(v) P(u) with P_{ij} = [i == w(j)].
            auto pm = [](const WeylElement& w) {
                Mat3<int> p{};
                for (int j = 0; j < 3; ++j) p.at(w.w[j], j) = 1;
                return p;
            };
            const auto pv = pm(v);
            const auto pu = pm(u);
            Mat3<int> prod{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int l = 0; l < 3; ++l) prod.at(i, j) += pv.at(i, l) * pu.at(l, j);
            CHECK(prod == pm(v * u));
        }
    }
    CHECK(WeylElement::transposition(0, 1).str() == "[2,1,3]");
    CHECK(WeylElement::transposition(0, 1).sign() == -1);
}

TEST_CASE("weyl action on generators") {
    const auto& sol = GeneratorTable::solution();
    const WeylElement s01 = WeylElement::transposition(0, 1);
    const WeylElement s12 = WeylElement::transposition(1, 2);

    const MatDiffOp op_b12 = MatDiffOp::scalar_term(sol, MultiIndex{}, b(sol, Pair::T12));
    // Swapping t1, t2 reorients the pair: beta is odd.
    CHECK(weyl_transform(op_b12, s01) ==
          MatDiffOp::scalar_term(sol, MultiIndex{}, -b(sol, Pair::T12)));
    // betap is even.
    const MatDiffOp op_bp12 =
        MatDiffOp::scalar_term(sol, MultiIndex{}, DiffPoly::gen(sol, Pair::T12, GenKind::BetaPrime));
    CHECK(weyl_transform(op_bp12, s01) == op_bp12);
    // (12) sends t13 to t23 without reorientation.
    const MatDiffOp op_b13 = MatDiffOp::scalar_term(sol, MultiIndex{}, b(sol, Pair::T13));
    CHECK(weyl_transform(op_b13, s01) ==
          MatDiffOp::scalar_term(sol, MultiIndex{}, b(sol, Pair::T23)));

    // Derivatives: the action permutes the axes of the multi-index.
    const MatDiffOp d1 =
        MatDiffOp::scalar_term(sol, MultiIndex::unit(0), DiffPoly::constant(sol, 1));
    CHECK(weyl_transform(d1, s01) ==
          MatDiffOp::scalar_term(sol, MultiIndex::unit(1), DiffPoly::constant(sol, 1)));
    CHECK(weyl_transform(weyl_transform(d1, s12), s12) == d1);
}

TEST_CASE("weyl action composes as a right action of compositions") {
    const auto& hyp = GeneratorTable::hyperbolic();
    SplitMix64 rng(21);
    for (int rep = 0; rep < 3; ++rep) {
        const MatDiffOp D = random_op(rng, hyp);
        for (const auto& v : WeylElement::all())
            for (const auto& w : WeylElement::all())
                CHECK(weyl_transform(weyl_transform(D, v), w) == weyl_transform(D, v * w));
    }
}

TEST_CASE("compose implements the Leibniz expansion") {
    const auto& sol = GeneratorTable::solution();
    const DiffPoly one = DiffPoly::constant(sol, 1);
    const DiffPoly beta12 = b(sol, Pair::T12);

    // [d_1, f] = f' as multiplication operators.
    const MatDiffOp d1 = MatDiffOp::scalar_term(sol, MultiIndex::unit(0), one);
    const MatDiffOp mf = MatDiffOp::scalar_term(sol, MultiIndex{}, beta12);
    const MatDiffOp lhs = commutator(d1, mf);
    CHECK(lhs == MatDiffOp::scalar_term(sol, MultiIndex{}, beta12.derive(0)));

    // d_1^2 after f: coefficients f, 2 f', f''.
    const MatDiffOp d11 = MatDiffOp::scalar_term(sol, MultiIndex::of(2, 0, 0), one);
    MatDiffOp expect = MatDiffOp::zero(sol);
    expect.add_scalar(MultiIndex::of(2, 0, 0), beta12);
    expect.add_scalar(MultiIndex::of(1, 0, 0), beta12.derive(0).scaled(2));
    expect.add_scalar(MultiIndex{}, beta12.derive(0).derive(0));
    CHECK(compose(d11, mf) == expect);

    // Matrix order matters: E acts first, then D's matrix multiplies.
    MatDiffOp e12 = MatDiffOp::zero(sol);
    e12.add_entry(MultiIndex{}, 0, 1, one);
    MatDiffOp e21 = MatDiffOp::zero(sol);
    e21.add_entry(MultiIndex{}, 1, 0, one);
    MatDiffOp e11 = MatDiffOp::zero(sol);
    e11.add_entry(MultiIndex{}, 0, 0, one);
    CHECK(compose(e12, e21) == e11);
    CHECK(compose(e21, e12).terms().begin()->second.at(1, 1) == one);
}

TEST_CASE("operator ring axioms") {
    for (const GeneratorTable* table : {&GeneratorTable::solution(), &GeneratorTable::hyperbolic()}) {
        SplitMix64 rng(77);
        for (int rep = 0; rep < 4; ++rep) {
            const MatDiffOp D = random_op(rng, *table, 3);
            const MatDiffOp E = random_op(rng, *table, 3);
            const MatDiffOp F = random_op(rng, *table, 3);
            CHECK(compose(compose(D, E), F) == compose(D, compose(E, F)));
            CHECK(compose(D + E, F) == compose(D, F) + compose(E, F));
            CHECK(compose(D, E + F) == compose(D, E) + compose(D, F));
            // Jacobi identity for the commutator.
            const MatDiffOp jac = commutator(D, commutator(E, F)) +
                                  commutator(E, commutator(F, D)) +
                                  commutator(F, commutator(D, E));
            CHECK(jac.is_zero());
        }
    }
}

TEST_CASE("identity and scaling") {
    const auto& sol = GeneratorTable::solution();
    SplitMix64 rng(3);
    const MatDiffOp D = random_op(rng, sol);
    const MatDiffOp I = MatDiffOp::identity(sol);
    CHECK(compose(D, I) == D);
    CHECK(compose(I, D) == D);
    CHECK((D - D).is_zero());
    CHECK(D.scaled(Rational(2)) == D + D);
    const MatDiffOp subs = D.substitute_param(Param::K, Rational(1));
    for (const auto& [alpha, a] : subs.terms())
        for (const auto& p : a.m) CHECK(p.max_param_degree(Param::K) == 0);
}

TEST_CASE("gauge conjugation") {
    const auto& hyp = GeneratorTable::hyperbolic();
    const DiffPoly k = DiffPoly::param(hyp, Param::K);
    const DiffPoly c12 = DiffPoly::gen(hyp, Pair::T12, GenKind::Coth);
    const DiffPoly c13 = DiffPoly::gen(hyp, Pair::T13, GenKind::Coth);
    const DiffPoly c23 = DiffPoly::gen(hyp, Pair::T23, GenKind::Coth);
    const std::array<DiffPoly, 3> chi{k * (c12 + c13), k * (-c12 + c23), k * (-c13 - c23)};

    // chi is a gradient and sums to zero.
    CHECK((chi[0] + chi[1] + chi[2]).is_zero());

    const MatDiffOp d1 =
        MatDiffOp::scalar_term(hyp, MultiIndex::unit(0), DiffPoly::constant(hyp, 1));
    MatDiffOp expect = MatDiffOp::zero(hyp);
    expect.add_scalar(MultiIndex::unit(0), DiffPoly::constant(hyp, 1));
    expect.add_scalar(MultiIndex{}, -chi[0]);
    CHECK(conjugate_by_gauge(d1, chi) == expect);

    // Conjugating back with -chi inverts the map.
    SplitMix64 rng(1);
    const MatDiffOp D = random_op(rng, hyp, 3);
    const std::array<DiffPoly, 3> neg{-chi[0], -chi[1], -chi[2]};
    CHECK(conjugate_by_gauge(conjugate_by_gauge(D, chi), neg) == D);

    // Non-gradient fields are rejected.
    const std::array<DiffPoly, 3> bad{DiffPoly::gen(hyp, Pair::T12, GenKind::Beta),
                                      DiffPoly::zero(hyp), DiffPoly::zero(hyp)};
    CHECK_THROWS_AS(conjugate_by_gauge(d1, bad), DomainError);
}

TEST_CASE("full symbol of constant-coefficient operators") {
    const auto& sol = GeneratorTable::solution();
    const DiffPoly one = DiffPoly::constant(sol, 1);
    MatDiffOp P1 = MatDiffOp::zero(sol);
    for (int i = 0; i < 3; ++i) P1.add_scalar(MultiIndex::unit(i), one);

    const auto rat = PotentialBackend::rational();
    const CVec3 lambda{{{0.5, 0.1}, {-0.2, 0.3}, {1.0, 0.0}}};
    const CMat3 sym = full_symbol(P1, rat, {1.0, 0.3, -0.8}, lambda);
    const std::complex<double> sum = lambda[0] + lambda[1] + lambda[2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const std::complex<double> want = (i == j) ? sum : std::complex<double>(0.0);
            CHECK(std::abs(to_mat(sym).at(i, j) - want) < 1e-14);
        }
}

TEST_CASE("symbol respects composition on plane waves") {
    // fd_apply of compose(D, E) to exp(lambda . t) v converges to
    // symbol(D) symbol(E) v at second order in h.
    const auto& sol = GeneratorTable::solution();
    SplitMix64 rng(8);
    const auto hyp_b = PotentialBackend::hyperbolic();
    const MatDiffOp D = random_op(rng, sol, 3);
    const MatDiffOp E = random_op(rng, sol, 3);
    const MatDiffOp C = compose(D, E);

    const Vec3 t{0.9, 0.2, -0.7};
    const CVec3 lambda{{{0.4, 0.2}, {-0.3, 0.1}, {0.2, -0.5}}};
    const CVec3 v{{{1.0, 0.0}, {-0.5, 0.5}, {0.25, 1.0}}};
    const double kval = 0.5;

    auto plane = [&](const Vec3& x) {
        const std::complex<double> phase =
            std::exp(lambda[0] * x[0] + lambda[1] * x[1] + lambda[2] * x[2]);
        return CVec3{phase * v[0], phase * v[1], phase * v[2]};
    };
    const std::complex<double> phase0 =
        std::exp(lambda[0] * t[0] + lambda[1] * t[1] + lambda[2] * t[2]);
    const CMat3 sym = full_symbol(C, hyp_b, t, lambda, kval);
    CVec3 want{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) want[i] += to_mat(sym).at(i, j) * v[j] * phase0;

    double prev_err = 0.0;
    int step = 0;
    for (double h : {2e-2, 1e-2, 5e-3}) {
        const CVec3 got = fd_apply(C, plane, t, h, hyp_b, kval);
        double err = 0.0;
        for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(got[i] - want[i]));
        if (step > 0) {
            const double order = std::log2(prev_err / err);
            CHECK(order > 1.8);
        }
        prev_err = err;
        ++step;
    }
}

TEST_CASE("on-shell symbol identifies operators modulo the trace constraint") {
    const auto& sol = GeneratorTable::solution();
    const DiffPoly one = DiffPoly::constant(sol, 1);

    const MatDiffOp d3 = MatDiffOp::scalar_term(sol, MultiIndex::unit(2), one);
    MatDiffOp minus12 = MatDiffOp::zero(sol);
    minus12.add_scalar(MultiIndex::unit(0), -one);
    minus12.add_scalar(MultiIndex::unit(1), -one);
    CHECK_FALSE(d3 == minus12);
    CHECK(equal_on_shell(d3, minus12));
    CHECK_FALSE(equal_on_shell(d3, -minus12));

    // e2 in shifted derivatives equals e2 - (1/3) P1^2 identically.
    MatDiffOp P1 = MatDiffOp::zero(sol);
    for (int i = 0; i < 3; ++i) P1.add_scalar(MultiIndex::unit(i), one);
    MatDiffOp e2 = MatDiffOp::zero(sol);
    e2.add_scalar(MultiIndex::of(1, 1, 0), one);
    e2.add_scalar(MultiIndex::of(1, 0, 1), one);
    e2.add_scalar(MultiIndex::of(0, 1, 1), one);

    // Shifted first derivatives: d'_i = d_i - (1/3)(d_1 + d_2 + d_3).
    std::array<MatDiffOp, 3> dp;
    for (int i = 0; i < 3; ++i) {
        dp[i] = MatDiffOp::scalar_term(sol, MultiIndex::unit(i), one) +
                P1.scaled(Rational::of(-1, 3));
    }
    MatDiffOp e2p = compose(dp[0], dp[1]) + compose(dp[0], dp[2]) + compose(dp[1], dp[2]);
    CHECK(e2p == e2 - compose(P1, P1).scaled(Rational::of(1, 3)));
}

TEST_CASE("numeric residual sampling") {
    const auto& sol = GeneratorTable::solution();
    const auto rat = PotentialBackend::rational();
    const MatDiffOp Z = MatDiffOp::zero(sol);
    const MatDiffOp I = MatDiffOp::identity(sol);

    SampleSpec spec;
    spec.count = 40;
    spec.seed = 11;

    const ResidualStats zs = numeric_residual(Z, {&I}, rat, std::nullopt, spec);
    CHECK(zs.worst == 0.0);
    CHECK(zs.samples == 40);

    const MatDiffOp M = MatDiffOp::scalar_term(sol, MultiIndex{}, b(sol, Pair::T12));
    const ResidualStats ms = numeric_residual(M, {&I}, rat, std::nullopt, spec);
    CHECK(ms.worst > 0.0);

    // Determinism: same seed gives identical stats; jobs do not change them.
    const ResidualStats again = numeric_residual(M, {&I}, rat, std::nullopt, spec);
    CHECK(again.worst == ms.worst);
    CHECK(again.worst_point == ms.worst_point);
    SampleSpec par = spec;
    par.jobs = 4;
    const ResidualStats parallel = numeric_residual(M, {&I}, rat, std::nullopt, par);
    CHECK(parallel.worst == ms.worst);
    CHECK(parallel.worst_point == ms.worst_point);

    // Different seeds explore different points.
    SampleSpec other = spec;
    other.seed = 12;
    const ResidualStats os = numeric_residual(M, {&I}, rat, std::nullopt, other);
    CHECK(os.worst != ms.worst);
}

TEST_CASE("sampling respects the elliptic period box") {
    const auto ell = PotentialBackend::elliptic(1.0, 0.3);
    SampleSpec spec;
    spec.count = 50;
    spec.seed = 4;
    const double cell = 2.0 * elliptic_K(0.3);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const Vec3 t = sample_regular_point(ell, spec, i);
        for (int a = 0; a < 3; ++a) {
            CHECK(std::fabs(t[a]) <= 2.0);
            for (int bidx = a + 1; bidx < 3; ++bidx) {
                CHECK(ell.singular_distance(t[a] - t[bidx]) >= spec.guard);
                CHECK(std::fabs(t[a] - t[bidx]) < cell);
            }
        }
    }
}

TEST_CASE("operator errors") {
    const auto& sol = GeneratorTable::solution();
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp D = MatDiffOp::zero(sol);
    CHECK_THROWS_AS(D.add_entry(MultiIndex{}, 3, 0, DiffPoly::constant(sol, 1)), DomainError);
    CHECK_THROWS_AS(D.add_entry(MultiIndex{}, 0, 0, DiffPoly::constant(hyp, 1)),
                    TableMismatchError);
    const MatDiffOp A = MatDiffOp::identity(sol);
    const MatDiffOp B = MatDiffOp::identity(hyp);
    CHECK_THROWS_AS(compose(A, B), TableMismatchError);
    CHECK_THROWS_AS(fd_apply(A, [](const Vec3&) { return CVec3{}; }, {1, 0, -1}, 0.0,
                             PotentialBackend::rational()),
                    DomainError);
}
