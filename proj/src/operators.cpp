#include "vbx/operators.hpp"

namespace vbx {

Expression total_derivative(const Expression& f) {
    Expression out;
    for (const auto& c : f.coordinates()) {
        Expression partial = f.differentiate(c);
        if (partial.is_zero()) continue;
        out += Expression::coordinate(next_order(c)) * partial;
    }
    return out;
}

DifferentialForm total_derivative(const DifferentialForm& f) {
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) {
        Expression dc = total_derivative(t.coeff);
        if (!dc.is_zero()) ts.push_back(FormTerm{std::move(dc), t.diffs});
        for (size_t k = 0; k < t.diffs.size(); ++k) {
            FormTerm nt;
            nt.coeff = t.coeff;
            nt.diffs = t.diffs;
            nt.diffs[k] = next_order(nt.diffs[k]);
            ts.push_back(std::move(nt));
        }
    }
    return DifferentialForm::from_terms(f.degree(), std::move(ts));
}

VectorField fundamental_field(int p, int dim, int max_order) {
    if (p < 1) throw InvalidArgument("fundamental field stage must be positive");
    if (dim < 1) throw InvalidArgument("dimension must be positive");
    if (max_order < 0) throw InvalidArgument("negative maximum order");
    VectorField x;
    for (int i = 1; i <= dim; ++i) {
        for (int r = p; r <= max_order; ++r) {
            Rational scale(1);
            for (int j = 0; j < p; ++j) scale *= Rational(r - j);
            x.components[Coordinate{i, r}] =
                Expression::constant(scale) * Expression::coordinate(Coordinate{i, r - p + 1});
        }
    }
    return x;
}

DifferentialForm vertical_endomorphism(const DifferentialForm& f) {
    std::vector<FormTerm> ts;
    for (const auto& t : f.terms()) {
        for (size_t k = 0; k < t.diffs.size(); ++k) {
            const int p = t.diffs[k].order;
            if (p == 0) continue;
            FormTerm nt;
            nt.coeff = Expression::constant(Rational(p)) * t.coeff;
            nt.diffs = t.diffs;
            nt.diffs[k].order -= 1;
            ts.push_back(std::move(nt));
        }
    }
    return DifferentialForm::from_terms(f.degree(), std::move(ts));
}

DifferentialForm invert_total_derivative(const DifferentialForm& f) {
    const int r = f.degree();
    if (r < 1) throw InvalidArgument("inverse total derivative needs degree >= 1");
    DifferentialForm result(r);
    DifferentialForm chain = vertical_endomorphism(f);  // S^(p+1) f at step p
    DifferentialForm acc = chain;
    Rational coeff;
    for (int p = 0; !chain.is_zero(); ++p) {
        // acc = d_T^p S^(p+1) f, built incrementally.
        coeff = inverse_factorial(p + 1) / rat_pow(Rational(r), p + 1);
        if (p % 2 != 0) coeff = -coeff;
        result += Expression::constant(coeff) * acc;
        chain = vertical_endomorphism(chain);
        if (chain.is_zero()) break;
        acc = chain;
        for (int j = 0; j <= p; ++j) acc = total_derivative(acc);
    }
    return result;
}

DifferentialForm canonical_representative(const DifferentialForm& f) {
    return f - total_derivative(invert_total_derivative(f));
}

CanonicalCheck canonical_check(const DifferentialForm& f) {
    DifferentialForm p = invert_total_derivative(f);
    return CanonicalCheck{p, total_derivative(p).is_zero()};
}

DifferentialForm variational_derivative(const DifferentialForm& f) {
    DifferentialForm df = exterior_d(f);
    if (df.is_zero()) return df;
    return df - total_derivative(invert_total_derivative(df));
}

DifferentialForm variational_derivative(const Expression& lagrangian) {
    return variational_derivative(DifferentialForm::scalar(lagrangian));
}

}  // namespace vbx
