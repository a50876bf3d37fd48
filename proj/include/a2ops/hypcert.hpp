// Exact zero test for hyperbolic-table expressions.
//
// The canonical form in the generator ring rewrites within each pair but has
// no cross-pair rules, so identities that couple the three arguments (for
// example products of coth factors over different pairs) leave canonically
// nonzero representatives that still vanish as functions.  This module
// decides such cases exactly: substituting u = exp(t12), v = exp(t23) turns
// every hyperbolic generator into a rational function of (u, v) with
// denominator a monomial in u^2-1, v^2-1, (uv)^2-1, and the expression is the
// zero function iff the combined numerator polynomial is zero.  Since u and v
// are algebraically independent, this is a complete decision procedure, not a
// numeric heuristic.
#pragma once

#include "a2ops/diffring.hpp"
#include "a2ops/opalgebra.hpp"

namespace a2ops {

// True iff the expression vanishes identically as a function of the three
// pair arguments, for every value of the coupling parameter.  Requires the
// hyperbolic generator table (a universal zero passes trivially); throws
// TableMismatchError otherwise.
bool hyperbolic_zero_certificate(const DiffPoly& p);

// Certifies every coefficient entry of an operator difference.
bool hyperbolic_zero_certificate(const MatDiffOp& op);

}  // namespace a2ops
