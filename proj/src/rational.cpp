#include "vbx/rational.hpp"

#include "vbx/errors.hpp"

namespace vbx {

Rational rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r) {
    return r.get_den() == 1;
}

long to_long(const Rational& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw InternalError("rational does not fit a machine integer: " + rational_str(r));
    return r.get_num().get_si();
}

long floor_to_long(const Rational& r) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw InternalError("exponent overflow");
    return q.get_si();
}

int sign_of(const Rational& r) {
    return sgn(r);
}

Rational rat_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (sgn(base) == 0) {
        if (exp < 0) throw DivisionByZero();
        return Rational(0);
    }
    const unsigned long k = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
    Rational r;
    if (exp < 0) {
        r = Rational(den, num);
    } else {
        r = Rational(num, den);
    }
    r.canonicalize();
    return r;
}

bool exact_root(const Rational& value, unsigned long k, Rational* out) {
    if (k == 0) throw InternalError("zeroth root");
    if (sgn(value) < 0 && k % 2 == 0) return false;
    BigInt num, den;
    const int num_exact = mpz_root(num.get_mpz_t(), value.get_num().get_mpz_t(), k);
    if (!num_exact) return false;
    const int den_exact = mpz_root(den.get_mpz_t(), value.get_den().get_mpz_t(), k);
    if (!den_exact) return false;
    Rational r(num, den);
    r.canonicalize();
    *out = r;
    return true;
}

Rational inverse_factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    Rational r(1, f);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r) {
    return r.get_str();
}

}  // namespace vbx
