#include "doctest.h"
#include "support.hpp"

#include "superbracket/brackets.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/quasitriangular.hpp"

using namespace sbt;

namespace {

ShiftDatum datum(const Poly& h, const Poly& r, std::optional<Poly> t = std::nullopt) {
    return ShiftDatum(MasterHamiltonian(h, MasterKind::OddMaster), r, std::move(t));
}

VectorField sl2() {
    auto b = vector_bundle(base_space({}), {Parity::Even, Parity::Even, Parity::Even}, true, {"h", "e", "f"});
    VectorField q(b, Parity::Odd);
    q.set_coefficient(b->index("e"), P(b, "-2*h*e"));
    q.set_coefficient(b->index("f"), P(b, "2*h*f"));
    q.set_coefficient(b->index("h"), P(b, "-e*f"));
    return q;
}

}  // namespace

TEST_SUITE("quasitriangular") {

TEST_CASE("shift substitutes p -> p + dr/dx") {
    auto t = cotangent(base21());
    auto d = datum(P(t, "xi1*p_x1*p_x2"), P(t, "x1*x2"));
    CHECK(shift(d) == P(t, "xi1*p_x1*p_x2 + xi1*x1*p_x1 + xi1*x2*p_x2 + xi1*x1*x2"));
    CHECK(master_equation_residual(d) == P(t, "xi1*x1*x2"));
    CHECK(momentum_quadratic(d.h.value()));
    CHECK(classify(d) == ShiftClass::QuasiTriangular);
    auto parts = coboundary_decompose(d);
    CHECK(parts.coboundary == P(t, "xi1*x1*p_x1 + xi1*x2*p_x2"));
    CHECK(parts.curvature == P(t, "xi1*x1*x2"));
    CHECK(parts.sum() == shift(d));
}

TEST_CASE("shift with a parameter") {
    auto t = cotangent(with_parameter(base21(), "t"));
    auto d = datum(P(t, "xi1*p_x1"), P(t, "x1^2"), P(t, "t"));
    CHECK(shift(d) == P(t, "xi1*p_x1 + 2*t*x1*xi1"));
    CHECK_THROWS_AS(datum(P(t, "xi1*p_x1"), P(t, "x1"), P(t, "x1")), Error);
}

TEST_CASE("shift preconditions") {
    auto t = cotangent(base21());
    CHECK_THROWS_AS(datum(P(t, "xi1*p_x1"), P(t, "p_x1")), Error);
    CHECK_THROWS_AS(datum(P(t, "xi1*p_x1"), P(t, "xi1")), Error);
    CHECK_THROWS_AS(ShiftDatum(MasterHamiltonian(P(t, "p_x1"), MasterKind::OddMaster), P(t, "x1")), Error);
}

TEST_CASE("D shifted by a bivector is D + K_P") {
    auto a = anticotangent(base_space({{"x1", Parity::Even}, {"x2", Parity::Even}}));
    auto lift = schouten_lift(a);
    Poly p = embed(P(a, "st_x1*st_x2"), lift.phase);
    auto d = datum(lift.master, p);
    CHECK(shift(d) == lift.master + poisson(lift.master, p));
    CHECK(classify(d) == ShiftClass::Triangular);
}

TEST_CASE("sl2 bialgebroids") {
    auto q = sl2();
    auto dual = dual_shifted_bundle(q.space());
    auto tri = build_quasitriangular_bialgebroid(q, P(dual, "pi_h*pi_e"));
    CHECK(tri.kind == ShiftClass::Triangular);
    CHECK(tri.compatibility.is_zero());
    CHECK(tri.weights.h_e == Weight{1, 2});
    CHECK(tri.weights.r == Weight{2, 0});
    CHECK(tri.weights.h_estar == Weight{2, 1});

    auto quasi = build_quasitriangular_bialgebroid(q, P(dual, "pi_e*pi_f"));
    CHECK(quasi.kind == ShiftClass::QuasiTriangular);
    CHECK(!quasi.master_residual.is_zero());
    CHECK(to_string(quasi.kind) == std::string("quasi-triangular"));
}

}
