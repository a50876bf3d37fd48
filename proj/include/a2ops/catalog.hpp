#pragma once

#include <array>
#include <string>
#include <vector>

#include "a2ops/opalgebra.hpp"

namespace a2ops {

// The commuting family in the beta form, buildable over the generic solution
// table (default), the hyperbolic table, or the control table. The deformation
// parameter stays symbolic.
MatDiffOp build_P1(const GeneratorTable& table = GeneratorTable::solution());
MatDiffOp build_Q1(const GeneratorTable& table = GeneratorTable::solution());
MatDiffOp build_P2(const GeneratorTable& table = GeneratorTable::solution());

// Hyperbolic-model operators (trigonometric form, symbolic k).
MatDiffOp build_L2();       // quadratic invariant in shifted derivatives
MatDiffOp build_tildeQ1();  // first-order companion of the density-conjugated pair
MatDiffOp build_tildeP2();  // second-order companion, including the -4k^2 shift
MatDiffOp build_RtauD1();   // first-order operator in shifted derivatives
MatDiffOp build_RtauD2();   // second-order operator in shifted derivatives

// Radial parts of the group-case invariant operators (fixed multiplicity).
MatDiffOp build_first_sl3r();    // k = 1/2
MatDiffOp build_first_sl3c();    // k = 1
MatDiffOp build_first_su6();     // k = 2
MatDiffOp build_casimir_sl3r();  // k = 1/2
MatDiffOp build_casimir_sl3c();  // k = 1
MatDiffOp build_casimir_su6();   // k = 2

// Log-gradient of the density delta_half with symbolic k; the chi fed to
// conjugate_by_gauge to pass between the tilde pair and the beta-form pair.
std::array<DiffPoly, 3> gauge_chi();

struct HcEigenvalues {
    std::array<double, 3> first_diag;  // eigenvalue matrix of the first-order operator
    double second;                     // eigenvalue of the second-order operator
};
// Joint eigenvalues on the plane-wave family labelled by lambda with
// lambda1 + lambda2 + lambda3 = 0 (ConstraintError otherwise).
HcEigenvalues hc_eigenvalues(const std::array<double, 3>& lambda, double k);

// All buildable operator names, in catalog order.
const std::vector<std::string>& catalog_names();
// Builds by name; DomainError for unknown names.
MatDiffOp build_catalog(const std::string& name);

}  // namespace a2ops
