#include "vbx/recovery.hpp"

namespace vbx {

namespace {

// Total polynomial degree of one canonical term, counting only coordinate
// factors; is_polynomial guarantees integer exponents.
long term_degree(const Term& t, const std::set<Coordinate, CoordinateLess>* fiber) {
    long deg = 0;
    for (const auto& f : t.factors) {
        if (f.base.kind != FactorBase::Kind::Coord) continue;
        if (fiber && !fiber->count(f.base.coord)) continue;
        deg += to_long(f.exponent);
    }
    return deg;
}

void validate_source(const SourceForm& eps, const char* what, int max_order) {
    if (eps.dim < 1) throw InvalidArgument("dimension must be positive");
    if (static_cast<int>(eps.components.size()) != eps.dim)
        throw InvalidArgument("component count does not match the dimension");
    for (const auto& c : eps.components) {
        for (const auto& coord : c.coordinates())
            if (coord.index > eps.dim)
                throw InvalidArgument("source form component uses a coordinate index "
                                      "beyond the dimension");
        if (!c.is_polynomial())
            throw NonPolynomial(std::string(what) +
                                " requires polynomial source components");
        const auto order = c.max_order();
        if (max_order >= 0 && order && *order > max_order)
            throw NotSupported(std::string(what) + " expects a source form of order at "
                                                   "most " +
                               std::to_string(max_order));
    }
}

RecoveryReport trivial_report() {
    RecoveryReport report;
    report.kappa = DifferentialForm::zero(1);
    report.verified = true;
    return report;
}

bool reproduces(const Expression& lagrangian, const SourceForm& eps) {
    SourceForm back = euler_lagrange(lagrangian, eps.dim);
    for (int i = 0; i < eps.dim; ++i)
        if (back.components[i] != eps.components[i]) return false;
    return true;
}

}  // namespace

DifferentialForm poincare_homotopy(const DifferentialForm& f) {
    const int r = f.degree();
    if (r < 1) throw InvalidArgument("the homotopy needs a form of degree >= 1");
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) {
        if (!t.coeff.is_polynomial())
            throw NonPolynomial("the homotopy requires polynomial coefficients");
        for (const auto& term : t.coeff.terms()) {
            Expression weighted =
                Expression::from_terms({term}) *
                Expression::constant(Rational(1, r + term_degree(term, nullptr)));
            for (size_t k = 0; k < t.diffs.size(); ++k) {
                FormTerm nt;
                nt.coeff = weighted * Expression::coordinate(t.diffs[k]);
                if (k % 2 != 0) nt.coeff = -nt.coeff;
                nt.diffs = t.diffs;
                nt.diffs.erase(nt.diffs.begin() + k);
                ts.push_back(std::move(nt));
            }
        }
    }
    return DifferentialForm::from_terms(r - 1, std::move(ts));
}

Expression fiber_potential(const std::vector<Expression>& components,
                           const std::vector<Coordinate>& fiber) {
    if (components.size() != fiber.size())
        throw InvalidArgument("one component per fiber coordinate is required");
    std::set<Coordinate, CoordinateLess> fs(fiber.begin(), fiber.end());
    if (fs.size() != fiber.size()) throw InvalidArgument("repeated fiber coordinate");
    for (const auto& c : components)
        if (!c.is_polynomial_in(fs))
            throw NonPolynomial("fiber potentials require components polynomial in "
                                "the fiber coordinates");
    for (size_t k = 0; k < fiber.size(); ++k)
        for (size_t l = k + 1; l < fiber.size(); ++l)
            if (components[k].differentiate(fiber[l]) !=
                components[l].differentiate(fiber[k]))
                throw SymmetryViolation("the fiber jacobian is not symmetric");
    Expression h;
    for (size_t k = 0; k < fiber.size(); ++k) {
        for (const auto& term : components[k].terms()) {
            h += Expression::from_terms({term}) *
                 Expression::coordinate(fiber[k]) *
                 Expression::constant(Rational(1, 1 + term_degree(term, &fs)));
        }
    }
    return h;
}

RecoveryReport recover_lagrangian(const SourceForm& eps) {
    validate_source(eps, "recovery", -1);
    DifferentialForm theta = eps.to_form();
    if (theta.is_zero()) return trivial_report();
    DifferentialForm defect = variational_derivative(theta);
    if (!defect.is_zero())
        throw NotVariational("the source form is not variational");

    DifferentialForm dtheta = exterior_d(theta);
    DifferentialForm pd = invert_total_derivative(dtheta);
    DifferentialForm kappa = poincare_homotopy(pd);
    if (exterior_d(kappa) != pd)
        throw InternalError("the homotopy failed to invert the exterior derivative");
    DifferentialForm rest = theta - total_derivative(kappa);
    Expression lagrangian = poincare_homotopy(rest).scalar_part();
    if (exterior_d(lagrangian) != rest)
        throw InternalError("the recovered lagrangian lost the closed remainder");

    RecoveryReport report;
    report.lagrangian = std::move(lagrangian);
    report.kappa = std::move(kappa);
    report.order = report.lagrangian.max_order().value_or(0);
    report.verified = reproduces(report.lagrangian, eps);
    return report;
}

RecoveryReport recover_first_order(const SourceForm& eps) {
    validate_source(eps, "first-order recovery", 2);
    HelmholtzCoefficients hs = helmholtz_sonin(eps);
    if (!hs.all_zero())
        throw NotVariational("the source form fails the Helmholtz conditions");
    DifferentialForm theta = eps.to_form();
    if (theta.is_zero()) return trivial_report();

    DifferentialForm dtheta = exterior_d(theta);
    DifferentialForm pd = invert_total_derivative(dtheta);
    DifferentialForm kappa0 = poincare_homotopy(pd);
    if (exterior_d(kappa0) != pd)
        throw InternalError("the homotopy failed to invert the exterior derivative");
    // For a second-order variational source, P(d theta) lives over base and
    // first-order differentials, so kappa0 does too with first-order
    // coefficients.
    for (const auto& t : kappa0.terms()) {
        if (t.diffs.front().order > 1 || t.coeff.max_order().value_or(0) > 1)
            throw InternalError("the correction form escaped first order");
    }

    std::vector<Expression> velocity_components(eps.dim);
    std::vector<Coordinate> fiber;
    for (int i = 1; i <= eps.dim; ++i) fiber.push_back(Coordinate{i, 1});
    for (const auto& t : kappa0.terms())
        if (t.diffs.front().order == 1)
            velocity_components[t.diffs.front().index - 1] = t.coeff;
    Expression gauge;
    try {
        gauge = fiber_potential(velocity_components, fiber);
    } catch (const SymmetryViolation&) {
        throw InternalError("the gauge step lost jacobian symmetry");
    }
    DifferentialForm kappa = kappa0 - exterior_d(gauge);
    for (const auto& t : kappa.terms())
        if (t.diffs.front().order != 0)
            throw InternalError("gauge fixing left non-base differentials");

    DifferentialForm rest = theta - total_derivative(kappa);
    Expression lagrangian = poincare_homotopy(rest).scalar_part();
    if (exterior_d(lagrangian) != rest)
        throw InternalError("the recovered lagrangian lost the closed remainder");
    if (lagrangian.max_order().value_or(0) > 1)
        throw InternalError("recovery produced a higher-order lagrangian");

    RecoveryReport report;
    report.lagrangian = std::move(lagrangian);
    report.kappa = std::move(kappa);
    report.order = report.lagrangian.max_order().value_or(0);
    report.verified = reproduces(report.lagrangian, eps);
    return report;
}

}  // namespace vbx
