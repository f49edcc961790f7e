#include "doctest.h"
#include "support.hpp"

#include "superbracket/brackets.hpp"

using namespace sbt;

TEST_SUITE("geometry") {

TEST_CASE("constructions name and grade their variables") {
    auto m = base21();
    auto t = cotangent(m);
    CHECK(t->variable(t->index("p_x1")).parity == Parity::Even);
    CHECK(t->variable(t->index("p_xi1")).parity == Parity::Odd);
    CHECK(t->variable(t->index("p_x1")).weight == Weight{1, 1});

    auto a = anticotangent(m);
    CHECK(a->variable(a->index("st_x1")).parity == Parity::Odd);
    CHECK(a->variable(a->index("st_xi1")).parity == Parity::Even);
    CHECK(a->pairs_of(Parity::Odd).size() == 3);
    CHECK(a->pairs_of(Parity::Even).empty());

    auto d = antitangent(m);
    CHECK(d->variable(d->index("dx1")).parity == Parity::Odd);
    CHECK(d->variable(d->index("dxi1")).parity == Parity::Even);
    CHECK(d->pairs().empty());
}

TEST_CASE("parameters are never paired") {
    auto t = cotangent(with_parameter(base21(), "t"));
    CHECK(!t->find("p_t"));
    CHECK(t->size() == 7);
}

TEST_CASE("vector bundle weights") {
    auto e = vector_bundle(base_space({{"x1", Parity::Even}}), {Parity::Even}, true);
    CHECK(e->variable(e->index("xi1")).parity == Parity::Odd);
    CHECK(e->variable(e->index("xi1")).weight == Weight{0, 1});
    auto t = cotangent(e);
    CHECK(t->variable(t->index("pi_xi1")).weight == Weight{1, 0});
    CHECK(t->variable(t->index("p_x1")).weight == Weight{1, 1});
}

TEST_CASE("Mackenzie-Xu relabeling swaps weights and preserves the pairing") {
    auto e = vector_bundle(base_space({{"x1", Parity::Even}}), {Parity::Even, Parity::Odd}, true);
    auto t = cotangent(e);
    auto mx = mx_transform(t);
    CHECK(mx.target->variable(mx.target->index("pi_xi1")).weight == Weight{0, 1});
    CHECK(mx.target->variable(mx.target->index("xi1")).role == Role::FiberMomentum);
    for (const auto& p : t->pairs()) {
        Poly a = Poly::variable(t, p.momentum), b = Poly::variable(t, p.coordinate);
        CHECK(poisson(mx.apply(a), mx.apply(b)) == mx.apply(poisson(a, b)));
    }
    CHECK_THROWS_AS(mx_transform(cotangent(base21())), Error);
}

TEST_CASE("Mackenzie-Xu relabeling is an involution up to the chart") {
    auto e = vector_bundle(base_space({{"x1", Parity::Even}}), {Parity::Even}, true);
    auto t = cotangent(e);
    auto once = mx_transform(t);
    auto twice = mx_transform(once.target);
    for (std::size_t i = 0; i < t->size(); ++i) {
        Poly back = twice.apply(once.apply(Poly::variable(t, i)));
        CHECK(to_text(back) == to_text(Poly::variable(t, i) * Rational(once.signs[i] * twice.signs[i])));
    }
}

}
