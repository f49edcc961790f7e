#include "doctest.h"
#include "support.hpp"

#include "superbracket/homotopy.hpp"
#include "superbracket/random.hpp"

using namespace sbt;

namespace {

// Chevalley-Eilenberg field of sl2 on Pi g: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
VectorField sl2() {
    auto b = vector_bundle(base_space({}), {Parity::Even, Parity::Even, Parity::Even}, true, {"h", "e", "f"});
    VectorField q(b, Parity::Odd);
    q.set_coefficient(b->index("e"), P(b, "-2*h*e"));
    q.set_coefficient(b->index("f"), P(b, "2*h*f"));
    q.set_coefficient(b->index("h"), P(b, "-e*f"));
    return q;
}

}  // namespace

TEST_SUITE("homotopy") {

TEST_CASE("sl2 structure constants") {
    auto q = sl2();
    CHECK(commutator(q, q).is_zero());
    auto l = extract_linfty(q, 3);
    using V = LInftyStructure::Vector;
    // h, e, f = generators 0, 1, 2; a global sign is convention, ratios are not
    V he = l.bracket_basis({0, 1}), hf = l.bracket_basis({0, 2}), ef = l.bracket_basis({1, 2});
    Rational c = he[1] / 2;
    CHECK(c * c == 1);
    CHECK(he == V{0, 2 * c, 0});
    CHECK(hf == V{0, 0, -2 * c});
    CHECK(ef == V{c, 0, 0});
    CHECK(l.bracket_basis({0, 1, 2}) == V{0, 0, 0});
    CHECK(verify_generalized_jacobi(l, 3).ok());
    CHECK(encode_linfty(l, q.space()) == q);
}

TEST_CASE("perturbing a homological field breaks Jacobi") {
    auto q = sl2();
    VectorField bump(q.space(), Parity::Odd);
    bump.set_coefficient(0, P(q.space(), "h*e"));
    CHECK(!commutator(q + bump, q + bump).is_zero());
    auto l = extract_linfty(q + bump, 3);
    auto rep = verify_generalized_jacobi(l, 3);
    CHECK(!rep.ok());
    REQUIRE(rep.first_failure);
    CHECK(rep.first_failure->arity == 3);
}

TEST_CASE("random homological fields") {
    PolyGenerator g(7);
    auto s = linear_chart({Parity::Odd, Parity::Even, Parity::Odd});
    for (int i = 0; i < 10; ++i) {
        auto q = homological_field(g, s, i % 2 == 0, 3);
        CHECK(commutator(q, q).is_zero());
        CHECK(verify_generalized_jacobi(extract_linfty(q, 4), 4).ok());
    }
}

TEST_CASE("higher derived brackets of an odd master Hamiltonian") {
    auto t = cotangent(base21());
    MasterHamiltonian h(P(t, "xi1*p_x1*p_x2"), MasterKind::OddMaster);
    CHECK(h.is_master());
    CHECK(higher_schouten(h, {P(t, "x1")}).is_zero());
    CHECK(higher_schouten(h, {P(t, "x1"), P(t, "x2")}) == P(t, "xi1"));
    CHECK(higher_schouten(h, {P(t, "x1^2"), P(t, "x2")}) == P(t, "2*x1*xi1"));
    CHECK_THROWS_AS(MasterHamiltonian(P(t, "p_x1"), MasterKind::OddMaster), Error);
}

TEST_CASE("higher Poisson brackets of an even master") {
    auto a = anticotangent(base21());
    MasterHamiltonian p(P(a, "st_x1*st_x2"), MasterKind::EvenMaster);
    CHECK(p.is_master());
    Poly b = higher_poisson(p, {P(a, "x1"), P(a, "x2")});
    CHECK((b == P(a, "1") || b == P(a, "-1")));
    CHECK(higher_poisson(p, {P(a, "x2"), P(a, "x1")}) == -b);
}

TEST_CASE("algebroid of the tangent bundle") {
    auto m = base_space({{"x1", Parity::Even}, {"x2", Parity::Even}});
    auto b = vector_bundle(m, {Parity::Even, Parity::Even}, true);
    VectorField q(b, Parity::Odd);
    q.set_coefficient(0, P(b, "xi1"));
    q.set_coefficient(1, P(b, "xi2"));
    Section u{Parity::Even, {P(m, "x2"), P(m, "0")}};  // x2 d/dx1
    Section v{Parity::Even, {P(m, "0"), P(m, "x1")}};  // x1 d/dx2
    auto data = algebroid_brackets(q, u, v, P(m, "x1*x2"));
    CHECK(data.anchor == P(m, "x2^2"));
    // [x2 d/dx1, x1 d/dx2] = x2 d/dx2 - x1 d/dx1
    CHECK(data.bracket.components[0] == P(m, "-x1"));
    CHECK(data.bracket.components[1] == P(m, "x2"));
}

}
