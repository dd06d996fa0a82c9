#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "vbx/operators.hpp"

namespace vbxtest {

using namespace vbx;

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

inline Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    const int v = d(rng);
    return Rational(v == 0 ? 1 : v);
}

// Random polynomial over coordinates with index <= dim and order <=
// max_order; at most max_terms terms of small degree.
inline Expression random_polynomial(std::mt19937_64& rng, int dim, int max_order,
                                    int max_terms) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> nfac(0, 2);
    std::uniform_int_distribution<int> idx(1, dim);
    std::uniform_int_distribution<int> ord(0, max_order);
    std::uniform_int_distribution<int> expo(1, 2);
    Expression e;
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Expression term = Expression::constant(random_coeff(rng));
        const int nf = nfac(rng);
        for (int j = 0; j < nf; ++j) {
            const Coordinate c{idx(rng), ord(rng)};
            term = term * Expression::coordinate(c).pow(Rational(expo(rng)));
        }
        e += term;
    }
    return e;
}

// Occasionally decorates a polynomial with a transcendental or inverse
// factor to stress canonicalization; stays exact throughout.
inline Expression random_scalar(std::mt19937_64& rng, int dim, int max_order,
                                int max_terms) {
    Expression e = random_polynomial(rng, dim, max_order, max_terms);
    std::uniform_int_distribution<int> pick(0, 19);
    const int p = pick(rng);
    std::uniform_int_distribution<int> idx(1, dim);
    const Expression q = Expression::coordinate(Coordinate{idx(rng), 0});
    if (p == 0) e = e * sin(q);
    if (p == 1) e = e * cos(q);
    if (p == 2) e += (q * q + Expression::constant(Rational(1))).pow(Rational(-1));
    return e;
}

inline DifferentialForm random_form(std::mt19937_64& rng, int dim, int max_order,
                                    int degree, int max_terms) {
    std::vector<Coordinate> pool;
    for (int i = 1; i <= dim; ++i)
        for (int p = 0; p <= max_order; ++p) pool.push_back(Coordinate{i, p});
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::vector<FormTerm> ts;
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        FormTerm ft;
        ft.coeff = random_polynomial(rng, dim, max_order, 3);
        std::vector<Coordinate> d = pool;
        std::shuffle(d.begin(), d.end(), rng);
        ft.diffs.assign(d.begin(), d.begin() + degree);
        ts.push_back(std::move(ft));
    }
    return DifferentialForm::from_terms(degree, std::move(ts));
}

// Independent oracle: the classical Euler-Lagrange components
// sum_p (-1)^p d_T^p (dL/dq^i_(p)).
inline std::vector<Expression> classical_euler_lagrange(const Expression& lagrangian,
                                                        int dim) {
    const int max_order = lagrangian.max_order().value_or(0);
    std::vector<Expression> out(dim);
    for (int i = 1; i <= dim; ++i) {
        Expression acc;
        for (int p = 0; p <= max_order; ++p) {
            Expression term = lagrangian.differentiate(Coordinate{i, p});
            for (int k = 0; k < p; ++k) term = total_derivative(term);
            if (p % 2 != 0) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out[i - 1] = acc;
    }
    return out;
}

// Independent oracle for the source form: sum_p (-1)^p/p! d_T^p S^p dL.
inline DifferentialForm explicit_source_form(const Expression& lagrangian) {
    DifferentialForm dl = exterior_d(lagrangian);
    DifferentialForm result = dl;
    DifferentialForm chain = dl;
    for (int p = 1; !chain.is_zero(); ++p) {
        chain = vertical_endomorphism(chain);
        if (chain.is_zero()) break;
        DifferentialForm term = chain;
        for (int k = 0; k < p; ++k) term = total_derivative(term);
        Rational c = inverse_factorial(p);
        if (p % 2 != 0) c = -c;
        result += Expression::constant(c) * term;
    }
    return result;
}

}  // namespace vbxtest
