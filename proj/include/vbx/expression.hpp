#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vbx/coordinate.hpp"
#include "vbx/errors.hpp"
#include "vbx/rational.hpp"

namespace vbx {

class Expression;
using ExprPtr = std::shared_ptr<const Expression>;

enum class Func { Sin, Cos, Exp, Ln };

// A factor base is one of:
//   Numeric  - a rational c carrying a fractional exponent (e.g. 2^(1/2));
//   Aux      - the reserved scaling scalar, printed "t", never parseable;
//   Coord    - a jet coordinate;
//   Call     - sin/cos/exp/ln applied to a canonical expression;
//   Sum      - a canonical expression of >= 2 terms raised to a negative or
//              fractional power (positive integer powers are expanded away).
struct FactorBase {
    enum class Kind { Numeric, Aux, Coord, Call, Sum };
    Kind kind = Kind::Coord;
    Rational number;          // Numeric
    Coordinate coord{1, 0};   // Coord
    Func fn = Func::Sin;      // Call
    ExprPtr sub;              // Call argument or Sum body
};

// base^exponent; exponent is a nonzero rational whose denominator is a power
// of two (sqrt is the only root-forming primitive).
struct Factor {
    FactorBase base;
    Rational exponent;
};

struct Term {
    Rational coeff;               // nonzero
    std::vector<Factor> factors;  // sorted by base, no duplicate bases
};

// Canonical sparse sum of terms.
//
//   expression := sum of terms, sorted by a graded monomial order, like terms
//                 merged, zero coefficients dropped; the empty sum is 0.
//   term       := rational coefficient * product of factors.
//
// Canonicalization rules beyond sorting and merging:
//   * numeric bases keep only the fractional part of their exponent (the
//     integer part folds into the coefficient) and exact roots are taken;
//   * a Sum base raised to a positive integer power is expanded; a fractional
//     power > 1 has its integer part split off and expanded;
//   * Sum bases are content-free (positive rational content extracted), and
//     sign-normalized when the exponent is an integer;
//   * absorption: within each group of terms sharing the same non-monomial
//     factor signature, the plain polynomial cofactor is divided exactly by
//     every plain-polynomial Sum base held at a negative exponent, as often
//     as the division is exact. This closes identities such as
//     (a^2+b^2)*(a^2+b^2)^(-1/2) = (a^2+b^2)^(1/2).
//
// Equality is structural on this canonical form: sound always, and complete
// for the polynomial/rational core (monomial denominators and shared sum
// denominators). sin^2+cos^2-1 is intentionally nonzero.
class Expression {
  public:
    Expression() = default;  // zero

    static Expression constant(const Rational& value);
    static Expression coordinate(const Coordinate& c);
    static Expression auxiliary_scalar();
    // Normalizing constructor used by other modules; runs the full pipeline.
    static Expression from_terms(std::vector<Term> raw);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;  // zero or coordinate- and call-free
    const std::vector<Term>& terms() const { return terms_; }

    Expression pow(const Rational& exponent) const;

    Expression differentiate(const Coordinate& c) const;
    Expression substitute(const std::map<Coordinate, Expression, CoordinateLess>& bindings) const;

    std::set<Coordinate, CoordinateLess> coordinates() const;
    // Highest derivative order of any coordinate; nullopt for coordinate-free
    // expressions (including zero).
    std::optional<int> max_order() const;

    bool mentions(const Coordinate& c) const;
    // Polynomial in every coordinate: coordinates appear only as positive
    // integer powers of monomial factors, never inside calls or sum bases.
    bool is_polynomial() const;
    // Same restriction, but only for the given coordinates.
    bool is_polynomial_in(const std::set<Coordinate, CoordinateLess>& fiber) const;

    std::string str() const;

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    Expression& operator+=(const Expression& o);
    Expression& operator-=(const Expression& o);
    Expression& operator*=(const Expression& o);

    friend bool operator==(const Expression& a, const Expression& b);
    friend bool operator!=(const Expression& a, const Expression& b);

  private:
    std::vector<Term> terms_;
};

// Total structural order; returns -1, 0 or 1.
int compare(const Expression& a, const Expression& b);

Expression sin(const Expression& e);
Expression cos(const Expression& e);
Expression exp(const Expression& e);
Expression ln(const Expression& e);
Expression sqrt(const Expression& e);

// Highest derivative order; throws ZeroExpression on zero, nullopt for
// nonzero constants.
std::optional<int> order_of(const Expression& e);

}  // namespace vbx
