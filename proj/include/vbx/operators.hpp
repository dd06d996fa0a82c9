#pragma once

#include "vbx/form.hpp"

namespace vbx {

// Total derivative: the formal derivative along the jet prolongation,
// sending each coordinate to the next order.
Expression total_derivative(const Expression& f);

// Extension to forms as a derivation with d_T(dx_(p)) = dx_(p+1).
DifferentialForm total_derivative(const DifferentialForm& f);

// Fundamental field of stage p >= 1; on an order-r coordinate its component
// is r(r-1)...(r-p+1) times the order r-p+1 coordinate. Stage 1 scales by
// jet order. Components cover indices up to `dim` and orders up to
// `max_order`.
VectorField fundamental_field(int p, int dim, int max_order);

// Vertical endomorphism: the degree-0 derivation vanishing on scalars with
// S(dx_(p)) = p dx_(p-1).
DifferentialForm vertical_endomorphism(const DifferentialForm& f);

// Left inverse P of the total derivative on forms of degree r >= 1:
//   P = sum_p (-1)^p / (r^(p+1) (p+1)!) d_T^p S^(p+1),
// truncated where the S-chain vanishes. Satisfies P(d_T theta) = theta.
DifferentialForm invert_total_derivative(const DifferentialForm& f);

// Projection (id - d_T P): the unique representative of f modulo exact
// total derivatives.
DifferentialForm canonical_representative(const DifferentialForm& f);

struct CanonicalCheck {
    DifferentialForm vertical_image;  // P f
    bool is_canonical;                // f equals its canonical representative
};

CanonicalCheck canonical_check(const DifferentialForm& f);

// Variational derivative: delta f = d f - d_T P (d f). Nilpotent, and on a
// degree-0 argument it produces the source form of the Lagrangian.
DifferentialForm variational_derivative(const DifferentialForm& f);
DifferentialForm variational_derivative(const Expression& lagrangian);

}  // namespace vbx
