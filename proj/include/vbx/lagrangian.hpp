#pragma once

#include <vector>

#include "vbx/operators.hpp"

namespace vbx {

// A source form: sum of eps_i dq^i over base differentials, stored by
// component with 1-based indexing.
struct SourceForm {
    int dim = 0;
    std::vector<Expression> components;  // size dim

    DifferentialForm to_form() const;
    // Requires a degree-1 form over order-0 differentials with indices
    // within dim.
    static SourceForm from_form(int dim, const DifferentialForm& f);
};

// Hilbert form of a Lagrangian: theta_L = P(dL). The exterior derivative
// splits as dL = eps_L + d_T theta_L.
DifferentialForm hilbert_form(const Expression& lagrangian);

// Source form of the Lagrangian; equals the variational derivative.
SourceForm euler_lagrange(const Expression& lagrangian, int dim);

// Passes to the homogeneous picture: coordinate 1 becomes the parameter,
// first derivatives of the remaining coordinates are divided by its first
// derivative, and the result is scaled to be 1-homogeneous. The input must
// be first order and must not involve derivatives of coordinate 1.
Expression homogenize(const Expression& lagrangian, int dim);

struct HomogeneityReport {
    bool homogeneous;
    // Stage-1 defect Delta^1(L) - L; zero together with the higher defects
    // exactly when L is homogeneous of jet order k.
    Expression scaling_residual;
    // Delta^p(L) for p = 2..k.
    std::vector<Expression> higher_residuals;
};

HomogeneityReport check_homogeneous(const Expression& lagrangian, int k);

// Helmholtz conditions for a second-order source form, reported as the
// coefficient families of delta(eps) on the sectors named by the members.
// The dq_dq and dqdot_dqdot families are antisymmetrized; all four vanish
// exactly when eps is variational.
struct HelmholtzCoefficients {
    int dim = 0;
    std::vector<std::vector<Expression>> dq_dq;
    std::vector<std::vector<Expression>> dqdot_dq;
    std::vector<std::vector<Expression>> dqddot_dq;
    std::vector<std::vector<Expression>> dqdot_dqdot;

    bool all_zero() const;
    // Rebuilds delta(eps) from the stored families.
    DifferentialForm reassemble() const;
};

HelmholtzCoefficients helmholtz_sonin(const SourceForm& eps);

// Splits a second-order source form as eps_i = A_ij qddot^j + B_i with A
// and B first order; fails with NotAffine when the components are not
// affine in accelerations.
struct SecondOrderDecomposition {
    std::vector<std::vector<Expression>> accel_matrix;  // A
    std::vector<Expression> rest;                       // B
    bool symmetric;                                     // A_ij == A_ji
};

SecondOrderDecomposition second_order_decompose(const SourceForm& eps);

}  // namespace vbx
