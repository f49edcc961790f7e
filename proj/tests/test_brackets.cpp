#include "doctest.h"
#include "support.hpp"

#include "superbracket/brackets.hpp"

using namespace sbt;

TEST_SUITE("brackets") {

TEST_CASE("canonical even bracket") {
    auto t = cotangent(base21());
    CHECK(poisson(P(t, "p_x1"), P(t, "x1")) == P(t, "1"));
    CHECK(poisson(P(t, "p_xi1"), P(t, "xi1")) == P(t, "1"));
    CHECK(poisson(P(t, "x1"), P(t, "p_x1")) == P(t, "-1"));
    CHECK(poisson(P(t, "p_x1"), P(t, "x1^2*x2")) == P(t, "2*x1*x2"));
    CHECK(poisson(P(t, "x1"), P(t, "x2")).is_zero());
}

TEST_CASE("(F,F) for odd F") {
    auto t = cotangent(base21());
    Poly f = P(t, "xi1*p_x1 + x1*p_x2*p_xi1");
    // 2 * sum dF/dp_a dF/dx^a
    CHECK(poisson(f, f) == P(t, "2*x1*p_x1*p_x2 + 2*xi1*p_x2*p_xi1"));
}

TEST_CASE("Schouten bracket in both conventions") {
    auto a = anticotangent(base21());
    auto sym = [](const Poly& p, const Poly& q) { return schouten(p, q, OddConvention::Symmetric); };
    CHECK(sym(P(a, "st_x1"), P(a, "x1")) == P(a, "1"));
    CHECK(sym(P(a, "st_xi1"), P(a, "xi1")) == P(a, "1"));
    CHECK(schouten(P(a, "st_x1"), P(a, "x1")) == P(a, "-1"));
    CHECK(schouten(P(a, "st_xi1"), P(a, "xi1")) == P(a, "1"));
    CHECK(derived_schouten(P(a, "x1*st_x1*st_x2"), P(a, "x1")) == sym(P(a, "x1*st_x1*st_x2"), P(a, "x1")));
    // P = x1 st1 st2, [[P, x1]] = x1 st2 with the antisymmetric sign
    CHECK(schouten(P(a, "x1*st_x1*st_x2"), P(a, "x1")) == P(a, "x1*st_x2"));
}

TEST_CASE("vector fields act from the left") {
    auto s = base21();
    VectorField x(s, Parity::Odd);
    x.set_coefficient(s->index("x1"), P(s, "xi1"));
    CHECK(x(P(s, "x1^2")) == P(s, "2*x1*xi1"));
    CHECK(commutator(x, x).is_zero());  // xi1 d/dx1 squares to zero
    VectorField y = VectorField::partial_along(s, s->index("xi1"));
    CHECK(y(P(s, "x1*xi1")) == P(s, "x1"));
    // [d/dxi1, xi1 d/dx1] = d/dx1
    CHECK(commutator(y, x) == VectorField::partial_along(s, s->index("x1")));
    CHECK_THROWS_AS(x.set_coefficient(s->index("x1"), P(s, "x1")), Error);
}

TEST_CASE("Cartan calculus on forms") {
    auto m = base_space({{"x1", Parity::Even}, {"x2", Parity::Even}});
    auto a = antitangent(m);
    auto d = de_rham(a);
    CHECK(d(P(a, "x1^2*x2")) == P(a, "2*x1*x2*dx1 + x1^2*dx2"));
    CHECK(d(d(P(a, "x1^2*x2"))).is_zero());
    auto ix = interior(VectorField::partial_along(m, 0), a);
    CHECK(ix(P(a, "dx1")) == P(a, "1"));
    CHECK(ix(P(a, "dx1*dx2")) == P(a, "dx2"));
    CHECK(ix(P(a, "dx2*dx1")) == P(a, "-dx2"));
}

TEST_CASE("linear and Hamiltonian fields") {
    auto s = base21();
    auto t = cotangent(s);
    VectorField x(s, Parity::Odd);
    x.set_coefficient(s->index("x1"), P(s, "xi1"));
    CHECK(linear_hamiltonian(x, t) == P(t, "xi1*p_x1"));
    auto h = hamiltonian_field(P(t, "xi1*p_x1"));
    CHECK(h(P(t, "x1")) == P(t, "xi1"));
}

TEST_CASE("homogeneous arguments are required") {
    auto t = cotangent(base21());
    CHECK_THROWS_AS(poisson(P(t, "x1 + xi1"), P(t, "x1")), Error);
    CHECK(bilinear([](const Poly& a, const Poly& b) { return poisson(a, b); }, P(t, "p_x1 + p_xi1"),
                   P(t, "x1 + xi1")) == P(t, "2"));
}

}
