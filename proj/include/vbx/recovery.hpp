#pragma once

#include "vbx/lagrangian.hpp"

namespace vbx {

// Radial homotopy h over all jet coordinates; on polynomial forms it
// satisfies h(d f) + d(h f) = f. Coefficients must be polynomial, otherwise
// NonPolynomial is raised.
DifferentialForm poincare_homotopy(const DifferentialForm& f);

// Integrates a gradient along fiber coordinates: returns H with
// dH/dx_k = components[k], components polynomial in the fiber. The fiber
// jacobian must be symmetric, otherwise SymmetryViolation is raised.
Expression fiber_potential(const std::vector<Expression>& components,
                           const std::vector<Coordinate>& fiber);

struct RecoveryReport {
    Expression lagrangian;
    DifferentialForm kappa;  // degree-1 correction with eps = dL + d_T kappa
    int order = 0;           // jet order of the recovered lagrangian
    bool verified = false;   // euler_lagrange(lagrangian) reproduced eps
};

// Reconstructs some Lagrangian for a variational source form by homotopy.
// Raises NotVariational when the Helmholtz test fails and NonPolynomial on
// non-polynomial components.
RecoveryReport recover_lagrangian(const SourceForm& eps);

// Reconstructs a first-order Lagrangian for a variational second-order
// source form, gauge-fixing the correction term onto base differentials.
RecoveryReport recover_first_order(const SourceForm& eps);

}  // namespace vbx
