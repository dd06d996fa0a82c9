#include "vbx/lagrangian.hpp"

#include <algorithm>

namespace vbx {

namespace {

void check_dim(int dim) {
    if (dim < 1) throw InvalidArgument("dimension must be positive");
}

void check_indices(const Expression& e, int dim, const char* what) {
    for (const auto& c : e.coordinates())
        if (c.index > dim)
            throw InvalidArgument(std::string(what) + " uses coordinate index " +
                                  std::to_string(c.index) + " beyond dimension " +
                                  std::to_string(dim));
}

}  // namespace

DifferentialForm SourceForm::to_form() const {
    std::vector<FormTerm> ts;
    for (int i = 1; i <= dim; ++i) {
        const Expression& c = components[i - 1];
        if (c.is_zero()) continue;
        ts.push_back(FormTerm{c, {Coordinate{i, 0}}});
    }
    return DifferentialForm::from_terms(1, std::move(ts));
}

SourceForm SourceForm::from_form(int dim, const DifferentialForm& f) {
    check_dim(dim);
    if (f.degree() != 1) throw InvalidArgument("a source form has degree 1");
    SourceForm s;
    s.dim = dim;
    s.components.assign(dim, Expression());
    for (const auto& t : f.terms()) {
        const Coordinate& c = t.diffs.front();
        if (c.order != 0)
            throw InvalidArgument("a source form uses only base differentials dq1..dq" +
                                  std::to_string(dim));
        if (c.index > dim)
            throw InvalidArgument("source form differential index exceeds dimension");
        s.components[c.index - 1] = t.coeff;
    }
    return s;
}

DifferentialForm hilbert_form(const Expression& lagrangian) {
    DifferentialForm dl = exterior_d(lagrangian);
    if (dl.is_zero()) return DifferentialForm::zero(1);
    return invert_total_derivative(dl);
}

SourceForm euler_lagrange(const Expression& lagrangian, int dim) {
    check_dim(dim);
    check_indices(lagrangian, dim, "the lagrangian");
    DifferentialForm eps = variational_derivative(lagrangian);
    // The canonical representative of dL lives over base differentials.
    for (const auto& t : eps.terms())
        if (t.diffs.front().order != 0)
            throw InternalError("source form escaped the base differentials");
    return SourceForm::from_form(dim, eps);
}

Expression homogenize(const Expression& lagrangian, int dim) {
    check_dim(dim);
    check_indices(lagrangian, dim, "the lagrangian");
    const auto coords = lagrangian.coordinates();
    for (const auto& c : coords) {
        if (c.index == 1 && c.order >= 1)
            throw InvalidArgument(
                "the input may not involve derivatives of coordinate 1, which "
                "becomes the parameter");
        if (c.order > 1)
            throw NotSupported("homogenization expects a first-order lagrangian");
    }
    const Expression u1 = Expression::coordinate(Coordinate{1, 1});
    std::map<Coordinate, Expression, CoordinateLess> bind;
    for (const auto& c : coords)
        if (c.order == 1) bind[c] = Expression::coordinate(c) / u1;
    return u1 * lagrangian.substitute(bind);
}

HomogeneityReport check_homogeneous(const Expression& lagrangian, int k) {
    if (k < 1) throw InvalidArgument("homogeneity order must be positive");
    int dim = 1;
    int max_order = 0;
    for (const auto& c : lagrangian.coordinates()) {
        dim = std::max(dim, c.index);
        max_order = std::max(max_order, c.order);
    }
    HomogeneityReport report;
    report.scaling_residual =
        fundamental_field(1, dim, max_order).apply(lagrangian) - lagrangian;
    report.homogeneous = report.scaling_residual.is_zero();
    for (int p = 2; p <= k; ++p) {
        Expression defect = fundamental_field(p, dim, max_order).apply(lagrangian);
        if (!defect.is_zero()) report.homogeneous = false;
        report.higher_residuals.push_back(std::move(defect));
    }
    return report;
}

namespace {

using Matrix = std::vector<std::vector<Expression>>;

Matrix make_matrix(int dim) {
    return Matrix(dim, std::vector<Expression>(dim));
}

void check_second_order(const SourceForm& eps, const char* what) {
    check_dim(eps.dim);
    if (static_cast<int>(eps.components.size()) != eps.dim)
        throw InvalidArgument("component count does not match the dimension");
    for (const auto& c : eps.components) {
        check_indices(c, eps.dim, "the source form");
        const auto order = c.max_order();
        if (order && *order > 2)
            throw NotSupported(std::string(what) + " expects a source form of order "
                                                   "at most 2");
    }
}

}  // namespace

HelmholtzCoefficients helmholtz_sonin(const SourceForm& eps) {
    check_second_order(eps, "the Helmholtz test");
    const int n = eps.dim;
    HelmholtzCoefficients out;
    out.dim = n;
    out.dq_dq = make_matrix(n);
    out.dqdot_dq = make_matrix(n);
    out.dqddot_dq = make_matrix(n);
    out.dqdot_dqdot = make_matrix(n);

    const Rational half(1, 2), quarter(1, 4);
    Matrix e0 = make_matrix(n), e1 = make_matrix(n), e2 = make_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            e0[i][j] = eps.components[i].differentiate(Coordinate{j + 1, 0});
            e1[i][j] = eps.components[i].differentiate(Coordinate{j + 1, 1});
            e2[i][j] = eps.components[i].differentiate(Coordinate{j + 1, 2});
        }
    }
    Matrix f1 = make_matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            f1[i][j] = e0[i][j] -
                       Expression::constant(half) * total_derivative(e1[i][j]) +
                       Expression::constant(quarter) *
                           total_derivative(total_derivative(e2[i][j]));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.dq_dq[i][j] = f1[i][j] - f1[j][i];
            out.dqdot_dq[i][j] =
                Expression::constant(half) *
                (e1[i][j] + e1[j][i] - total_derivative(e2[i][j]) -
                 total_derivative(e2[j][i]));
            out.dqddot_dq[i][j] = Expression::constant(quarter) * (e2[i][j] - e2[j][i]);
            out.dqdot_dqdot[i][j] = -Expression::constant(half) * (e2[i][j] - e2[j][i]);
        }
    }
    return out;
}

bool HelmholtzCoefficients::all_zero() const {
    for (const auto* m : {&dq_dq, &dqdot_dq, &dqddot_dq, &dqdot_dqdot})
        for (const auto& row : *m)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
    return true;
}

DifferentialForm HelmholtzCoefficients::reassemble() const {
    const Rational half(1, 2);
    std::vector<FormTerm> ts;
    auto add = [&ts](const Expression& c, Coordinate a, Coordinate b) {
        if (c.is_zero()) return;
        ts.push_back(FormTerm{c, {a, b}});
    };
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const Coordinate qi{i + 1, 0}, qj{j + 1, 0};
            const Coordinate vi{i + 1, 1}, vj{j + 1, 1};
            const Coordinate aj{j + 1, 2};
            add(Expression::constant(half) * dq_dq[i][j], qj, qi);
            add(dqdot_dq[i][j], vj, qi);
            add(dqddot_dq[i][j], aj, qi);
            add(Expression::constant(half) * dqdot_dqdot[i][j], vj, vi);
        }
    }
    return DifferentialForm::from_terms(2, std::move(ts));
}

SecondOrderDecomposition second_order_decompose(const SourceForm& eps) {
    check_second_order(eps, "the acceleration decomposition");
    const int n = eps.dim;
    SecondOrderDecomposition out;
    out.accel_matrix = make_matrix(n);
    out.rest.assign(n, Expression());
    out.symmetric = true;
    for (int i = 0; i < n; ++i) {
        Expression accel_part;
        for (int j = 0; j < n; ++j) {
            Expression a = eps.components[i].differentiate(Coordinate{j + 1, 2});
            const auto order = a.max_order();
            if (order && *order > 1)
                throw NotAffine("source form components are not affine in accelerations");
            accel_part += a * Expression::coordinate(Coordinate{j + 1, 2});
            out.accel_matrix[i][j] = std::move(a);
        }
        out.rest[i] = eps.components[i] - accel_part;
        const auto order = out.rest[i].max_order();
        if (order && *order > 1)
            throw NotAffine("source form components are not affine in accelerations");
    }
    for (int i = 0; i < n && out.symmetric; ++i)
        for (int j = i + 1; j < n; ++j)
            if (out.accel_matrix[i][j] != out.accel_matrix[j][i]) {
                out.symmetric = false;
                break;
            }
    return out;
}

}  // namespace vbx
