#include "doctest.h"
#include "expr_gen.hpp"
#include "support.hpp"

#include "superbracket/chart_file.hpp"
#include "superbracket/koszul.hpp"

using namespace sbt;

namespace {

std::string roundtrip(const std::string& text) { return expr::print(expr::parse(text)); }

expr::Location error_at(const std::string& text, const SpacePtr& s) {
    try {
        expr::Evaluator(s).eval(text);
    } catch (const expr::ParseError& e) {
        return e.location();
    }
    return {0, 0};
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("printing") {
    CHECK(roundtrip("x1+2*x2") == "x1 + 2*x2");
    CHECK(roundtrip("-(x1+x2)*xi1") == "-(x1 + x2)*xi1");
    CHECK(roundtrip("(x1*x2)^2") == "(x1*x2)^2");
    CHECK(roundtrip("(1/2)^3") == "(1/2)^3");
    CHECK(roundtrip("x1 - (x2 - xi1)") == "x1 - (x2 - xi1)");
    CHECK(roundtrip("hb[2](H;x1,x2)") == "hb[2](H; x1, x2)");
    CHECK(roundtrip("hb[0](H)") == "hb[0](H)");
    CHECK(roundtrip("koszul(P;x1,d(x2))") == "koszul(P; x1, d(x2))");
    CHECK(roundtrip("shift(H;r;t)") == "shift(H; r; t)");
    CHECK(roundtrip("d/dx1(x1^2)") == "d/dx1(x1^2)");
}

TEST_CASE("parser round trip on 1000 generated expressions") {
    ExprGen gen(2024);
    for (int i = 0; i < 1000; ++i) {
        std::string text = gen.expr(4);
        auto a = expr::parse(text);
        auto b = expr::parse(expr::print(a));
        INFO(text);
        CHECK(expr::equal(a, b));
        CHECK(expr::print(b) == expr::print(a));
    }
}

TEST_CASE("printed expressions evaluate to the same polynomial") {
    auto t = cotangent(base21());
    expr::Evaluator ev(t);
    ExprGen gen(99, true);
    for (int i = 0; i < 300; ++i) {
        std::string text = gen.expr(3);
        INFO(text);
        Poly a = ev.eval(text);
        CHECK(ev.eval(expr::print(expr::parse(text))) == a);
        CHECK(ev.eval(to_text(a)) == a);
    }
}

TEST_CASE("evaluation") {
    auto t = cotangent(base21());
    CHECK(P(t, "pb(p_x1, x1)") == P(t, "1"));
    CHECK(P(t, "d/dxi1(xi1*x1)") == P(t, "x1"));
    CHECK(P(t, "hb[2](xi1*p_x1*p_x2; x1, x2)") == P(t, "xi1"));
    CHECK(P(t, "shift(xi1*p_x1; x1^2)") == P(t, "xi1*p_x1 + 2*x1*xi1"));
    auto a = anticotangent(base_space({{"x1", Parity::Even}, {"x2", Parity::Even}}));
    CHECK(P(a, "koszul(x1*st_x1*st_x2; x1, d(x2))") == P(forms_chart(a), "x1"));
    CHECK(P(a, "sb(st_x1, x1)") == P(a, "-1"));
    CHECK(P(a, "alpha(st_x1)") == alpha(P(a, "st_x1")));
}

TEST_CASE("errors carry positions") {
    auto t = cotangent(base21());
    auto at = [&](const std::string& s) {
        auto l = error_at(s, t);
        return std::pair<int, int>{l.line, l.column};
    };
    CHECK(at("x1 + foo") == std::pair<int, int>{1, 6});
    CHECK(at("pb(x1") == std::pair<int, int>{1, 6});
    CHECK(at("x1 +") == std::pair<int, int>{1, 5});
    CHECK(at("hb[2](H; x1)").second == 1);
    CHECK(at("x1^x2") == std::pair<int, int>{1, 4});
    CHECK(at("x1 $ x2") == std::pair<int, int>{1, 4});
    CHECK_THROWS_AS(P(t, "sb(x1, x2)"), Error);
}

TEST_CASE("chart files") {
    auto doc = load_chart(R"(# a chart
var x1 even
var xi1 odd
var t param
apply cotangent
let H = xi1*p_x1
let G = pb(H, x1^2)
)");
    CHECK(doc.chart->size() == 5);
    REQUIRE(doc.lets.size() == 2);
    CHECK(doc.lets[1].second == P(doc.chart, "2*x1*xi1"));
    CHECK(doc.evaluator().eval("G + t") == P(doc.chart, "2*x1*xi1 + t"));

    auto bundle = load_chart("var x1 even\napply bundle rank=2 shifted=true parities=eo\n");
    CHECK(bundle.chart->variable(bundle.chart->index("xi1")).parity == Parity::Odd);
    CHECK(bundle.chart->variable(bundle.chart->index("xi2")).parity == Parity::Even);

    auto err = [](const std::string& text) -> std::pair<int, int> {
        try {
            load_chart(text);
        } catch (const expr::ParseError& e) {
            return {e.location().line, e.location().column};
        }
        return {0, 0};
    };
    CHECK(err("var x1 even\nvar x1 odd\n") == std::pair<int, int>{2, 1});
    CHECK(err("var x1 even\nlet y = x1 + q\n") == std::pair<int, int>{2, 14});
    CHECK(err("var x1 even\napply tangent\n").first == 2);
    CHECK(err("var x1 blue\n").first == 1);
    CHECK_THROWS_AS(load_chart_file("/nonexistent/chart"), Error);
}

}
