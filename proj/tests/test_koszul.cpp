#include "doctest.h"
#include "support.hpp"

#include "superbracket/koszul.hpp"

using namespace sbt;

TEST_SUITE("koszul") {

TEST_CASE("alpha of a bivector on an even base") {
    auto a = anticotangent(base_space({{"x1", Parity::Even}, {"x2", Parity::Even}}));
    auto k = koszul_phase(a);
    Poly p = P(a, "x1*st_x1*st_x2");
    Poly expected = P(k, "x1*p_x1*pi_x2 - x1*p_x2*pi_x1 + dx1*pi_x1*pi_x2");
    CHECK(alpha(p) == expected);
    CHECK(alpha_explicit(p) == expected);
    CHECK(alpha_display(p) == expected);
}

TEST_CASE("alpha display needs even base coordinates") {
    auto a = anticotangent(base21());
    Poly p = P(a, "st_xi1");
    CHECK(alpha_explicit(p) == alpha(p));
    CHECK(alpha_display(p) != alpha(p));
}

TEST_CASE("classical Koszul bracket of x1 d/dx1 ^ d/dx2") {
    auto a = anticotangent(base_space({{"x1", Parity::Even}, {"x2", Parity::Even}}));
    auto f = forms_chart(a);
    HigherPoissonStructure p(P(a, "x1*st_x1*st_x2"));
    REQUIRE(p.valid());
    CHECK(p.quadratic());
    CHECK(tensor_component(p.value(), 0, 1) == P(a, "-x1"));
    CHECK(higher_koszul(p, {P(f, "x1"), P(f, "dx2")}) == P(f, "x1"));
    CHECK(higher_koszul(p, {P(f, "x1"), P(f, "x2")}).is_zero());
    CHECK(higher_koszul(p, {P(f, "dx1"), P(f, "dx2")}) == P(f, "-dx1"));
    auto rep = classical_koszul_check(p, {P(base_space({{"x1", Parity::Even}, {"x2", Parity::Even}}), "x1*x2")});
    CHECK(rep.ok());
}

TEST_CASE("an invalid structure is reported, not rejected") {
    auto a = anticotangent(base21());
    HigherPoissonStructure p(P(a, "x2*st_x1*st_x2 + x1*st_xi1^2"));
    CHECK(!p.valid());
}

TEST_CASE("epsilon exponents") {
    using V = std::vector<Parity>;
    const auto e = Parity::Even, o = Parity::Odd;
    CHECK(display_epsilon(V{e, e}) == 2);
    CHECK(observed_epsilon(V{e, e}) == 0);
    CHECK((display_epsilon(V{o, e, e}) - observed_epsilon(V{o, e, e})) % 2 == 0);
    CHECK((display_epsilon(V{e, e, e, e}) - observed_epsilon(V{e, e, e, e})) % 2 != 0);
    CHECK((display_epsilon(V{e}) - observed_epsilon(V{e})) % 2 != 0);
}

TEST_CASE("Lichnerowicz differential and raising indices") {
    auto m = base_space({{"x1", Parity::Even}, {"x2", Parity::Even}});
    auto a = anticotangent(m);
    auto f = forms_chart(a);
    HigherPoissonStructure p(P(a, "st_x1*st_x2"));
    CHECK(lichnerowicz(p, P(a, "x1")) == P(a, "st_x2"));
    CHECK(lichnerowicz(p, P(a, "x2")) == P(a, "-st_x1"));
    CHECK(lichnerowicz_field(p)(P(a, "x1*x2")) == lichnerowicz(p, P(a, "x1*x2")));
    CHECK(lichnerowicz_display(p)(P(a, "x1")) == -lichnerowicz(p, P(a, "x1")));
    CHECK(raise_indices(p, P(f, "x1*dx1")) == P(a, "x1*st_x2"));
    CHECK(raise_indices(p, d_form(P(f, "x1*x2"), f)) == lichnerowicz(p, P(a, "x1*x2")));
}

TEST_CASE("de Rham differential of forms") {
    auto f = forms_chart(anticotangent(base21()));
    CHECK(d_form(P(f, "x1*x2"), f) == P(f, "x2*dx1 + x1*dx2"));
    CHECK(d_form(P(f, "xi1*x1"), f) == P(f, "dxi1*x1 - xi1*dx1"));
    CHECK(d_form(d_form(P(f, "xi1*x1^2"), f), f).is_zero());
}

}
