#pragma once

#include <gmpxx.h>

#include <string>

namespace vbx {

// Exact arbitrary-precision rational. mpq_class keeps values reduced with a
// positive denominator, which is exactly the canonical form required here.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational rational(long num, long den = 1);

bool is_integer(const Rational& r);

// Requires is_integer(r) and a value that fits in long.
long to_long(const Rational& r);

long floor_to_long(const Rational& r);

int sign_of(const Rational& r);

// base^exp with exp any machine integer; throws DivisionByZero for 0^negative.
Rational rat_pow(const Rational& base, long exp);

// Exact k-th root: returns true and fills *out iff value = out^k with out rational.
bool exact_root(const Rational& value, unsigned long k, Rational* out);

// 1/n! as a Rational.
Rational inverse_factorial(unsigned long n);

// Canonical text form: "n" or "n/d" with d > 1.
std::string rational_str(const Rational& r);

}  // namespace vbx
