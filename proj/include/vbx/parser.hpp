#pragma once

#include <string>

#include "vbx/expression.hpp"
#include "vbx/form.hpp"
#include "vbx/lagrangian.hpp"

namespace vbx {

// Parses a scalar expression. Coordinate indices must not exceed `dim`;
// violations raise ParseError with a 1-based position.
//
// Grammar (whitespace allowed between tokens):
//   expr     := term (("+" | "-") term)*
//   term     := factor (("*" | "/") factor)*
//   factor   := "-" factor | base ("^" uint)?
//   base     := rational | coord | func "(" expr ")" | "(" expr ")"
//   func     := "sin" | "cos" | "exp" | "ln" | "sqrt"
//   rational := uint ("/" uint)?
//   coord    := "q" uint ("'"* | "[" uint "]")
Expression parse_expression(const std::string& text, int dim);

// Parses a differential form: a sum of wedge terms, each an optional scalar
// coefficient times a wedge product of coordinate differentials "dq..".
//   form   := "0" | fterm (("+" | "-") fterm)*
//   fterm  := (coeff "*")? wedge
//   coeff  := term-without-differentials (parenthesize sums: "(q1 - q2)*dq1")
//   wedge  := diff ("/\" diff)*
//   diff   := "d" coord
// All wedge terms must share one degree. The literal "0" is the zero form.
DifferentialForm parse_form(const std::string& text, int dim);

// Reads a source form from either syntax: a payload mentioning "dq" uses the
// form grammar, anything else is a ";"-separated component list with exactly
// one expression per dimension.
SourceForm parse_source_form(const std::string& payload, int dim);

}  // namespace vbx
