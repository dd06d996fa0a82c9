#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "vbx/parser.hpp"
#include "vbx/recovery.hpp"

using namespace vbx;

namespace {

Expression P(const std::string& s, int dim = 2) { return parse_expression(s, dim); }
DifferentialForm F(const std::string& s, int dim = 2) { return parse_form(s, dim); }

SourceForm S(const std::string& payload, int dim) {
    return parse_source_form(payload, dim);
}

DifferentialForm random_poly_form(std::mt19937_64& rng, int dim, int max_order,
                                  int degree, int max_terms) {
    // Like vbxtest::random_form but with guaranteed polynomial coefficients.
    std::vector<FormTerm> ts;
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> idx(1, dim), ord(0, max_order);
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        FormTerm ft;
        ft.coeff = vbxtest::random_polynomial(rng, dim, max_order, 2);
        if (ft.coeff.is_zero()) continue;
        std::set<Coordinate, CoordinateLess> used;
        while (static_cast<int>(used.size()) < degree)
            used.insert(Coordinate{idx(rng), ord(rng)});
        ft.diffs.assign(used.begin(), used.end());
        ts.push_back(std::move(ft));
    }
    return DifferentialForm::from_terms(degree, std::move(ts));
}

}  // namespace

TEST_CASE("poincare homotopy identity") {
    CHECK(poincare_homotopy(F("dq1 /\\ dq2")) ==
          F("1/2*q1*dq2 - 1/2*q2*dq1"));
    CHECK(poincare_homotopy(F("q1'*dq1'", 1)).scalar_part() == P("1/2*q1'^2", 1));
    auto rng = vbxtest::make_rng(51);
    for (int r = 1; r <= 3; ++r) {
        for (int i = 0; i < 40; ++i) {
            const DifferentialForm f = random_poly_form(rng, 2, 2, r, 3);
            const DifferentialForm lhs =
                poincare_homotopy(exterior_d(f)) + exterior_d(poincare_homotopy(f));
            CHECK(lhs == f);
        }
    }
    // Scalars are recovered from their differentials up to the constant part.
    for (int i = 0; i < 40; ++i) {
        const Expression s = vbxtest::random_polynomial(rng, 2, 2, 4);
        std::map<Coordinate, Expression, CoordinateLess> at_zero;
        for (const auto& c : s.coordinates()) at_zero[c] = Expression();
        const Expression reduced = s - s.substitute(at_zero);
        CHECK(poincare_homotopy(exterior_d(s)).scalar_part() == reduced);
    }
    CHECK_THROWS_AS(poincare_homotopy(F("sin(q1)*dq1", 1)), NonPolynomial);
    CHECK_THROWS_AS(poincare_homotopy(DifferentialForm::scalar(P("q1"))),
                    InvalidArgument);
}

TEST_CASE("fiber potentials") {
    const std::vector<Coordinate> vel = {Coordinate{1, 1}, Coordinate{2, 1}};
    CHECK(fiber_potential({P("q2'"), P("q1'")}, vel) == P("q1'*q2'"));
    CHECK(fiber_potential({P("q1''", 1)}, {Coordinate{1, 2}}) == P("q1''^2/2", 1));
    // q1 rides along as a parameter outside the fiber.
    CHECK(fiber_potential({P("q1*q1'", 1)}, {Coordinate{1, 1}}) ==
          P("q1*q1'^2/2", 1));
    CHECK_THROWS_AS(fiber_potential({P("q2'"), -P("q1'")}, vel), SymmetryViolation);
    CHECK_THROWS_AS(fiber_potential({sin(P("q1'", 1))}, {Coordinate{1, 1}}),
                    NonPolynomial);
    CHECK_THROWS_AS(fiber_potential({P("q1")}, {}), InvalidArgument);
    // The gradient of the potential gives back the components.
    auto rng = vbxtest::make_rng(52);
    for (int i = 0; i < 30; ++i) {
        const Expression g = vbxtest::random_polynomial(rng, 2, 1, 4);
        const std::vector<Expression> comps = {g.differentiate(vel[0]),
                                               g.differentiate(vel[1])};
        const Expression h = fiber_potential(comps, vel);
        CHECK(h.differentiate(vel[0]) == comps[0]);
        CHECK(h.differentiate(vel[1]) == comps[1]);
    }
}

TEST_CASE("first-order recovery goldens") {
    const auto rep = recover_first_order(S("-q1''", 1));
    CHECK(rep.lagrangian == P("q1'^2/2", 1));
    CHECK(rep.kappa == F("-q1'*dq1", 1));
    CHECK(rep.order == 1);
    CHECK(rep.verified);
    // Harmonic oscillator.
    const auto osc = recover_first_order(S("-q1'' - q1", 1));
    CHECK(osc.lagrangian == P("q1'^2/2 - q1^2/2", 1));
    CHECK(osc.verified);
    // Variable mass: recovery lands on the standard kinetic Lagrangian.
    const auto vm = recover_first_order(S("-q1^2*q1'' - q1*q1'^2 - q1''", 1));
    CHECK(vm.lagrangian == P("(1 + q1^2)*q1'^2/2", 1));
    CHECK(vm.order == 1);
    CHECK(vm.verified);
    // Zero source: the trivial Lagrangian.
    const auto triv = recover_first_order(S("0", 1));
    CHECK(triv.lagrangian.is_zero());
    CHECK(triv.kappa.is_zero());
    CHECK(triv.verified);
}

TEST_CASE("first-order recovery round trips") {
    auto rng = vbxtest::make_rng(53);
    int done = 0;
    while (done < 30) {
        const Expression L = vbxtest::random_polynomial(rng, 2, 1, 4);
        const SourceForm eps = euler_lagrange(L, 2);
        if (eps.to_form().is_zero()) continue;
        ++done;
        const auto rep = recover_first_order(eps);
        CHECK(rep.verified);
        CHECK(rep.order <= 1);
        // The correction is gauge-fixed onto base differentials.
        for (const auto& t : rep.kappa.terms()) CHECK(t.diffs.front().order == 0);
        // The report records the defining identity eps = dL + d_T kappa.
        CHECK(eps.to_form() ==
              exterior_d(rep.lagrangian) + total_derivative(rep.kappa));
        // Round trip: the recovered Lagrangian has the same dynamics.
        const SourceForm back = euler_lagrange(rep.lagrangian, 2);
        for (int k = 0; k < 2; ++k) CHECK(back.components[k] == eps.components[k]);
    }
}

TEST_CASE("general recovery") {
    const auto rep = recover_lagrangian(S("-q1''", 1));
    CHECK(rep.lagrangian.str() == "-1/2*q1*q1''");
    CHECK(rep.kappa.str() == "-1/2*q1'*dq1 + 1/2*q1*dq1'");
    CHECK(rep.order == 2);
    CHECK(rep.verified);
    // Fourth-order dynamics: the homotopy picks 1/2 q1 q1'''', which is
    // gauge-equivalent to the minimal-order 1/2 q1''^2.
    const auto fourth = recover_lagrangian(S("q1[4]", 1));
    CHECK(fourth.verified);
    CHECK(fourth.lagrangian.str() == "1/2*q1*q1[4]");
    CHECK(euler_lagrange(fourth.lagrangian, 1).components[0] == P("q1[4]", 1));
    CHECK(recover_lagrangian(S("0; 0", 2)).verified);
    auto rng = vbxtest::make_rng(54);
    int done = 0;
    while (done < 25) {
        const Expression L = vbxtest::random_polynomial(rng, 2, 2, 3);
        const SourceForm eps = euler_lagrange(L, 2);
        if (eps.to_form().is_zero()) continue;
        ++done;
        const auto r = recover_lagrangian(eps);
        CHECK(r.verified);
        CHECK(eps.to_form() ==
              exterior_d(r.lagrangian) + total_derivative(r.kappa));
    }
}

TEST_CASE("recovery failure modes") {
    CHECK_THROWS_AS(recover_lagrangian(S("q1'", 1)), NotVariational);
    CHECK_THROWS_AS(recover_first_order(S("q1'", 1)), NotVariational);
    CHECK_THROWS_AS(recover_first_order(S("q1[4]", 1)), NotSupported);
    // Variational but transcendental: out of the homotopy's reach.
    CHECK_THROWS_AS(recover_lagrangian(S("sin(q1)", 1)), NonPolynomial);
    CHECK_THROWS_AS(recover_first_order(S("sin(q1)", 1)), NonPolynomial);
    SourceForm bad;
    bad.dim = 2;
    bad.components = {P("q1", 1)};
    CHECK_THROWS_AS(recover_lagrangian(bad), InvalidArgument);
    SourceForm leak;
    leak.dim = 1;
    leak.components = {P("q2")};
    CHECK_THROWS_AS(recover_lagrangian(leak), InvalidArgument);
}
