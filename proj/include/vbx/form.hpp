#pragma once

#include <map>
#include <string>
#include <vector>

#include "vbx/coordinate.hpp"
#include "vbx/errors.hpp"
#include "vbx/expression.hpp"

namespace vbx {

// One wedge monomial: coeff * dx_{c1} /\ ... /\ dx_{cr} with the
// differential list strictly increasing in coordinate order.
struct FormTerm {
    Expression coeff;
    std::vector<Coordinate> diffs;
};

// Differential form of fixed degree on the jet coordinates, with exact
// scalar coefficients. Degree 0 wraps a single scalar expression. Terms are
// kept sorted by differential list with canonical coefficients, so equality
// is structural.
class DifferentialForm {
  public:
    DifferentialForm() : degree_(0) {}
    explicit DifferentialForm(int degree);

    static DifferentialForm zero(int degree) { return DifferentialForm(degree); }
    static DifferentialForm scalar(const Expression& e);
    // Sorts each term's differentials (with sign), merges, drops zeros.
    static DifferentialForm from_terms(int degree, std::vector<FormTerm> raw);

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<FormTerm>& terms() const { return terms_; }
    // Degree-0 content; throws InvalidArgument on positive degree.
    Expression scalar_part() const;

    std::string str() const;

    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator-=(const DifferentialForm& o);

  private:
    int degree_;
    std::vector<FormTerm> terms_;
};

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a);
DifferentialForm operator*(const Expression& s, const DifferentialForm& f);
DifferentialForm operator*(const DifferentialForm& f, const Expression& s);
bool operator==(const DifferentialForm& a, const DifferentialForm& b);
bool operator!=(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

// Exterior derivative; all jet coordinates count as independent variables.
DifferentialForm exterior_d(const Expression& f);
DifferentialForm exterior_d(const DifferentialForm& f);

// Vector field with one scalar component per coordinate; missing = zero.
struct VectorField {
    std::map<Coordinate, Expression, CoordinateLess> components;

    // X(f) as a derivation on scalars.
    Expression apply(const Expression& f) const;
};

// Interior product i_X; degree drops by one.
DifferentialForm contract(const VectorField& x, const DifferentialForm& f);

// Cartan formula: L_X = d i_X + i_X d.
DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& f);

}  // namespace vbx
