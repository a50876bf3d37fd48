#include "a2ops/catalog.hpp"

#include <cmath>

namespace a2ops {

namespace {

DiffPoly one(const GeneratorTable& t) { return DiffPoly::constant(t, 1); }
DiffPoly kpar(const GeneratorTable& t) { return DiffPoly::param(t, Param::K); }
DiffPoly beta(const GeneratorTable& t, Pair p, int e = 1) {
    return DiffPoly::gen(t, p, GenKind::Beta, e);
}
DiffPoly betap(const GeneratorTable& t, Pair p) {
    return DiffPoly::gen(t, p, GenKind::BetaPrime);
}
DiffPoly coth(Pair p) { return DiffPoly::gen(GeneratorTable::hyperbolic(), p, GenKind::Coth); }

// diag(partial_1, partial_2, partial_3)
MatDiffOp diag_partial(const GeneratorTable& t) {
    MatDiffOp op = MatDiffOp::zero(t);
    for (int i = 0; i < 3; ++i) op.add_entry(MultiIndex::unit(i), i, i, one(t));
    return op;
}

// diag of the shifted derivatives partial_i - (1/3)(partial_1+partial_2+partial_3)
MatDiffOp diag_partial_shifted(const GeneratorTable& t) {
    MatDiffOp op = MatDiffOp::zero(t);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            op.add_entry(MultiIndex::unit(j), i, i,
                         DiffPoly::constant(t, Rational(i == j ? 1 : 0) - Rational::of(1, 3)));
    return op;
}

// e2(partial) * I
MatDiffOp e2_op(const GeneratorTable& t) {
    MatDiffOp op = MatDiffOp::zero(t);
    op.add_scalar(MultiIndex::of(1, 1, 0), one(t));
    op.add_scalar(MultiIndex::of(1, 0, 1), one(t));
    op.add_scalar(MultiIndex::of(0, 1, 1), one(t));
    return op;
}

// e2 of the shifted derivatives * I ( = e2(partial) - (1/3)(sum partial)^2 )
MatDiffOp e2_shifted_op(const GeneratorTable& t) {
    MatDiffOp p1 = MatDiffOp::zero(t);
    for (int i = 0; i < 3; ++i) p1.add_scalar(MultiIndex::unit(i), one(t));
    return e2_op(t) - compose(p1, p1).scaled(Rational::of(1, 3));
}

// -(sum over pairs) coth(t_ij) (partial_i - partial_j) * I   (hyperbolic)
MatDiffOp coth_drift() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = MatDiffOp::zero(hyp);
    for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
        op.add_scalar(MultiIndex::unit(pair_first(p)), -coth(p));
        op.add_scalar(MultiIndex::unit(pair_second(p)), coth(p));
    }
    return op;
}

// Antisymmetric first-order companion matrix (hyperbolic form).
Mat3<DiffPoly> m1_matrix() {
    const auto& hyp = GeneratorTable::hyperbolic();
    Mat3<DiffPoly> m;
    m.at(0, 0) = coth(Pair::T12) + coth(Pair::T13);
    m.at(1, 1) = -coth(Pair::T12) + coth(Pair::T23);
    m.at(2, 2) = -coth(Pair::T13) - coth(Pair::T23);
    m.at(0, 1) = -beta(hyp, Pair::T12);
    m.at(1, 0) = beta(hyp, Pair::T12);
    m.at(0, 2) = -beta(hyp, Pair::T13);
    m.at(2, 0) = beta(hyp, Pair::T13);
    m.at(1, 2) = -beta(hyp, Pair::T23);
    m.at(2, 1) = beta(hyp, Pair::T23);
    return m;
}

// Symmetric second-order companion matrix (hyperbolic form).
Mat3<DiffPoly> m2_matrix() {
    const auto& hyp = GeneratorTable::hyperbolic();
    Mat3<DiffPoly> m;
    m.at(0, 0) = beta(hyp, Pair::T12, 2) + beta(hyp, Pair::T13, 2);
    m.at(1, 1) = beta(hyp, Pair::T12, 2) + beta(hyp, Pair::T23, 2);
    m.at(2, 2) = beta(hyp, Pair::T13, 2) + beta(hyp, Pair::T23, 2);
    m.at(0, 1) = m.at(1, 0) = -(coth(Pair::T12) * beta(hyp, Pair::T12));
    m.at(0, 2) = m.at(2, 0) = -(coth(Pair::T13) * beta(hyp, Pair::T13));
    m.at(1, 2) = m.at(2, 1) = -(coth(Pair::T23) * beta(hyp, Pair::T23));
    return m;
}

Mat3<DiffPoly> scale_matrix(const Mat3<DiffPoly>& m, const DiffPoly& f) {
    Mat3<DiffPoly> r;
    for (int i = 0; i < 9; ++i) r.m[i] = f * m.m[i];
    return r;
}

Mat3<DiffPoly> scale_matrix(const Mat3<DiffPoly>& m, const Rational& c) {
    Mat3<DiffPoly> r;
    for (int i = 0; i < 9; ++i) r.m[i] = m.m[i].scaled(c);
    return r;
}

}  // namespace

MatDiffOp build_P1(const GeneratorTable& table) {
    MatDiffOp op = MatDiffOp::zero(table);
    for (int i = 0; i < 3; ++i) op.add_scalar(MultiIndex::unit(i), one(table));
    return op;
}

MatDiffOp build_Q1(const GeneratorTable& table) {
    MatDiffOp op = diag_partial(table);
    Mat3<DiffPoly> m;
    m.at(0, 1) = -beta(table, Pair::T12);
    m.at(1, 0) = beta(table, Pair::T12);
    m.at(0, 2) = -beta(table, Pair::T13);
    m.at(2, 0) = beta(table, Pair::T13);
    m.at(1, 2) = -beta(table, Pair::T23);
    m.at(2, 1) = beta(table, Pair::T23);
    op.add_matrix(MultiIndex{}, scale_matrix(m, kpar(table)));
    return op;
}

MatDiffOp build_P2(const GeneratorTable& table) {
    MatDiffOp op = e2_op(table);

    // k(k-1) sum of beta^2, scalar part.
    const DiffPoly beta_sq_sum =
        beta(table, Pair::T12, 2) + beta(table, Pair::T13, 2) + beta(table, Pair::T23, 2);
    const DiffPoly kk1 = DiffPoly::param(table, Param::K, 2) - kpar(table);
    op.add_scalar(MultiIndex{}, kk1 * beta_sq_sum);

    Mat3<DiffPoly> m;
    m.at(0, 0) = beta(table, Pair::T12, 2) + beta(table, Pair::T13, 2);
    m.at(1, 1) = beta(table, Pair::T12, 2) + beta(table, Pair::T23, 2);
    m.at(2, 2) = beta(table, Pair::T13, 2) + beta(table, Pair::T23, 2);
    m.at(0, 1) = m.at(1, 0) = betap(table, Pair::T12);
    m.at(0, 2) = m.at(2, 0) = betap(table, Pair::T13);
    m.at(1, 2) = m.at(2, 1) = betap(table, Pair::T23);
    op.add_matrix(MultiIndex{}, scale_matrix(m, kpar(table)));
    return op;
}

MatDiffOp build_L2() {
    const auto& hyp = GeneratorTable::hyperbolic();
    return e2_shifted_op(hyp) + coth_drift().scaled(kpar(hyp));
}

MatDiffOp build_tildeQ1() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = diag_partial(hyp);
    op.add_matrix(MultiIndex{}, scale_matrix(m1_matrix(), kpar(hyp)));
    return op;
}

MatDiffOp build_tildeP2() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = e2_op(hyp) + coth_drift().scaled(kpar(hyp));
    op.add_scalar(MultiIndex{}, DiffPoly::param(hyp, Param::K, 2).scaled(-4));
    op.add_matrix(MultiIndex{}, scale_matrix(m2_matrix(), kpar(hyp)));
    return op;
}

MatDiffOp build_RtauD1() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = diag_partial_shifted(hyp);
    op.add_matrix(MultiIndex{}, scale_matrix(m1_matrix(), kpar(hyp)));
    return op;
}

MatDiffOp build_RtauD2() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = build_L2();
    op.add_matrix(MultiIndex{}, scale_matrix(m2_matrix(), kpar(hyp)));
    return op;
}

MatDiffOp build_first_sl3r() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = diag_partial_shifted(hyp);
    op.add_matrix(MultiIndex{}, scale_matrix(m1_matrix(), Rational::of(1, 2)));
    return op;
}

MatDiffOp build_first_sl3c() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = diag_partial_shifted(hyp);
    op.add_matrix(MultiIndex{}, m1_matrix());
    return op;
}

MatDiffOp build_first_su6() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = diag_partial_shifted(hyp);
    op.add_matrix(MultiIndex{}, scale_matrix(m1_matrix(), Rational(2)));
    return op;
}

MatDiffOp build_casimir_sl3r() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = e2_op(hyp) + coth_drift().scaled(Rational::of(1, 2));
    op.add_matrix(MultiIndex{}, scale_matrix(m2_matrix(), Rational::of(1, 2)));
    return op;
}

MatDiffOp build_casimir_sl3c() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = e2_op(hyp) + coth_drift();
    op.add_matrix(MultiIndex{}, m2_matrix());
    return op;
}

MatDiffOp build_casimir_su6() {
    const auto& hyp = GeneratorTable::hyperbolic();
    MatDiffOp op = e2_shifted_op(hyp) + coth_drift().scaled(Rational(2));
    op.add_matrix(MultiIndex{}, scale_matrix(m2_matrix(), Rational(2)));
    return op;
}

std::array<DiffPoly, 3> gauge_chi() {
    const auto& hyp = GeneratorTable::hyperbolic();
    const DiffPoly k = kpar(hyp);
    return {k * (coth(Pair::T12) + coth(Pair::T13)), k * (-coth(Pair::T12) + coth(Pair::T23)),
            k * (-coth(Pair::T13) - coth(Pair::T23))};
}

HcEigenvalues hc_eigenvalues(const std::array<double, 3>& lambda, double k) {
    const double trace = lambda[0] + lambda[1] + lambda[2];
    if (std::fabs(trace) > 1e-12)
        throw ConstraintError("hc_eigenvalues requires lambda1 + lambda2 + lambda3 = 0");
    HcEigenvalues ev;
    ev.first_diag = lambda;
    ev.second = lambda[0] * lambda[1] + lambda[1] * lambda[2] + lambda[2] * lambda[0] + 4.0 * k * k;
    return ev;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "P1",         "Q1",         "P2",           "L2",           "tildeQ1",
        "tildeP2",    "RtauD1",     "RtauD2",       "first_sl3r",   "first_sl3c",
        "first_su6",  "casimir_sl3r", "casimir_sl3c", "casimir_su6"};
    return names;
}

MatDiffOp build_catalog(const std::string& name) {
    if (name == "P1") return build_P1();
    if (name == "Q1") return build_Q1();
    if (name == "P2") return build_P2();
    if (name == "L2") return build_L2();
    if (name == "tildeQ1") return build_tildeQ1();
    if (name == "tildeP2") return build_tildeP2();
    if (name == "RtauD1") return build_RtauD1();
    if (name == "RtauD2") return build_RtauD2();
    if (name == "first_sl3r") return build_first_sl3r();
    if (name == "first_sl3c") return build_first_sl3c();
    if (name == "first_su6") return build_first_su6();
    if (name == "casimir_sl3r") return build_casimir_sl3r();
    if (name == "casimir_sl3c") return build_casimir_sl3c();
    if (name == "casimir_su6") return build_casimir_su6();
    throw DomainError("unknown operator '" + name + "'");
}

}  // namespace a2ops
