// Acceptance run: one PASS/FAIL line per criterion. Everything is exact
// rational arithmetic; "residual" always means a polynomial that must be 0.
//
// Exit status is 0 when every criterion passes except the ones listed in
// kDocumentedFailures, which must fail in the documented way (their
// corrected statements are checked on the same line and must hold).

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "expr_gen.hpp"
#include "golden_runner.hpp"
#include "superbracket/conformance.hpp"
#include "superbracket/expr.hpp"
#include "superbracket/format.hpp"
#include "superbracket/geometry.hpp"
#include "superbracket/homotopy.hpp"
#include "superbracket/koszul.hpp"
#include "superbracket/random.hpp"

using namespace superbracket;
namespace cf = superbracket::conformance;

namespace {

// Statements that do not hold as written; see the README.
const std::set<int> kDocumentedFailures{9, 10};

struct Outcome {
    bool pass = true;
    bool corrected_ok = true;  // only meaningful for documented failures
    std::string detail;
};

struct Tally {
    std::size_t cases = 0;
    std::vector<std::string> failed;

    void run(const std::string& id, unsigned samples) {
        auto r = cf::run_case(cf::find_case(id), 1, samples);
        cases += r.samples;
        if (!r.passed) failed.push_back(id);
    }
    bool ok() const { return failed.empty(); }
    std::string text() const {
        std::string s = std::to_string(cases) + " cases";
        for (const auto& f : failed) s += "; failed " + f;
        return s;
    }
};

Outcome from(const Tally& t) { return {t.ok(), true, t.text()}; }

// ---------------------------------------------------------------- criterion 6

VectorField sl2() {
    auto b = vector_bundle(base_space({}), {Parity::Even, Parity::Even, Parity::Even}, true, {"h", "e", "f"});
    VectorField q(b, Parity::Odd);
    q.set_coefficient(b->index("e"), Poly::variable(b, "h") * Poly::variable(b, "e") * Rational(-2));
    q.set_coefficient(b->index("f"), Poly::variable(b, "h") * Poly::variable(b, "f") * Rational(2));
    q.set_coefficient(b->index("h"), Poly::variable(b, "e") * Poly::variable(b, "f") * Rational(-1));
    return q;
}

// Tangent algebroid of R^{1|1}: 4 generators x, y | xi1, xi2.
VectorField tangent_q() {
    auto m = base_space({{"x", Parity::Even}, {"y", Parity::Odd}});
    auto b = vector_bundle(m, {Parity::Even, Parity::Odd}, true);
    VectorField q(b, Parity::Odd);
    q.set_coefficient(0, Poly::variable(b, "xi1"));
    q.set_coefficient(1, Poly::variable(b, "xi2"));
    return q;
}

std::vector<VectorField> homological_fixtures() {
    std::vector<VectorField> out{sl2(), tangent_q()};
    PolyGenerator g(6);
    const std::vector<std::vector<Parity>> shapes{{Parity::Odd, Parity::Even},
                                                  {Parity::Even, Parity::Odd, Parity::Odd},
                                                  {Parity::Odd, Parity::Even, Parity::Odd, Parity::Even},
                                                  {Parity::Even, Parity::Even, Parity::Odd, Parity::Odd}};
    for (const auto& shape : shapes)
        for (int k = 0; k < 3; ++k) out.push_back(homological_field(g, linear_chart(shape), k == 1, 3));
    return out;
}

std::optional<VectorField> perturb(const VectorField& q, PolyGenerator& g) {
    auto s = q.space();
    for (int attempt = 0; attempt < 200; ++attempt) {
        VectorField bump(s, Parity::Odd);
        auto i = static_cast<std::size_t>(g.uniform(0, static_cast<long>(s->size()) - 1));
        PolyGenerator::Shape sh;
        sh.max_degree = 2;
        sh.max_terms = 1;
        sh.parity = s->variable(i).parity + Parity::Odd;
        bump.set_coefficient(i, g.poly(s, sh));
        VectorField p = q + bump;
        if (!commutator(p, p).is_zero()) return p;
    }
    return std::nullopt;
}

Outcome criterion6() {
    auto fixtures = homological_fixtures();
    PolyGenerator g(11);
    std::size_t held = 0, detected = 0;
    for (const auto& q : fixtures) {
        if (!commutator(q, q).is_zero()) return {false, true, "fixture is not homological"};
        if (verify_generalized_jacobi(extract_linfty(q, 4), 4).ok()) ++held;
        if (auto p = perturb(q, g); p && !verify_generalized_jacobi(extract_linfty(*p, 4), 4).ok()) ++detected;
    }
    std::ostringstream d;
    d << fixtures.size() << " fixtures; Jacobi holds for " << held << ", perturbation detected for " << detected;
    return {held == fixtures.size() && detected == fixtures.size(), true, d.str()};
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion8() {
    auto m = base_space({{"x1", Parity::Even}, {"x2", Parity::Even}, {"xi1", Parity::Odd}});
    auto a = anticotangent(m);
    expr::Evaluator ev(a), em(m);
    std::vector<Poly> samples;
    for (const char* f : {"x1", "x2", "xi1", "x1*x2^2", "x2*xi1", "1 + x1*x2", "x1*x2*xi1"}) samples.push_back(em.eval(f));
    std::size_t checks = 0, failed = 0;
    for (const char* p : {"2*st_x1*st_x2 - 3*st_xi1^2", "(x1^2 + x2)*st_x1*st_x2"}) {
        HigherPoissonStructure s(ev.eval(p));
        if (!s.valid()) return {false, true, std::string("not Poisson: ") + p};
        auto rep = classical_koszul_check(s, samples);
        checks += rep.checks.size();
        for (const auto& c : rep.checks) failed += !c.residual.is_zero();
    }
    return {failed == 0, true, std::to_string(checks) + " identities, " + std::to_string(failed) + " nonzero"};
}

// ---------------------------------------------------------------- criterion 9 / 10

Outcome criterion9() {
    auto lit = cf::run_case(cf::find_case("koszul.higher-display"), 1, 20);
    auto fixed = cf::run_case(cf::find_case("koszul.higher"), 1, 20);
    std::string d = "literal epsilon: " + std::to_string(lit.failing_samples) + "/" + std::to_string(lit.samples) +
                    " samples fail (l = 1 and l = 4 carry the opposite sign); with constant (l-1)(l-2)/2: " +
                    (fixed.passed ? "all pass" : "FAIL");
    return {lit.passed, fixed.passed, d};
}

Outcome criterion10() {
    Tally must;
    must.run("lichnerowicz.square", 100);
    must.run("lichnerowicz.field", 100);
    must.run("raising.diagram", 100);
    must.run("raising.bracket", 100);
    auto display = cf::run_case(cf::find_case("lichnerowicz.display"), 1, 50);
    auto plus = cf::run_case(cf::find_case("raising.bracket-display"), 1, 50);
    std::string d = "d_P^2 = 0, field route, diagram, bracket with -[[.,.]]: " +
                    std::string(must.ok() ? "pass" : "FAIL " + must.text()) +
                    "; display route: " + (display.passed ? "pass" : "d/dx^a part has the opposite sign") +
                    "; bracket with +[[.,.]]: " + (plus.passed ? "pass" : "fails");
    return {display.passed && plus.passed && must.ok(), must.ok(), d};
}

// ---------------------------------------------------------------- criterion 13 / 14

Outcome criterion13() {
    std::string d;
    bool ok = true;
    for (const auto& m : cf::mutations()) {
        cf::SuiteOptions o;
        o.conventions = m.conventions;
        o.shrink = false;
        o.jobs = 4;
        auto failed = cf::run_suite(o).failed_ids();
        ok = ok && !failed.empty();
        d += (d.empty() ? "" : "; ") + m.name + " -> " + std::to_string(failed.size()) + " cases" +
             (failed.empty() ? "" : " (" + failed.front() + ")");
    }
    return {ok, true, d};
}

Outcome criterion14() {
    auto goldens = sbt::run_goldens(SUPERBRACKET_TEST_DATA);
    std::size_t match = 0;
    for (const auto& g : goldens) match += g.match;
    sbt::ExprGen gen(14);
    std::size_t round = 0;
    for (int i = 0; i < 1000; ++i) {
        auto a = expr::parse(gen.expr(4));
        auto b = expr::parse(expr::print(a));
        round += expr::equal(a, b) && expr::print(a) == expr::print(b);
    }
    return {goldens.size() >= 10 && match == goldens.size() && round == 1000, true,
            std::to_string(match) + "/" + std::to_string(goldens.size()) + " golden files, " + std::to_string(round) +
                "/1000 round trips"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit;  // seconds, 0 = none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "graded-ring laws", 10,
         [] {
             Tally t;
             for (const char* id : {"graded.associativity", "graded.unit", "graded.commutativity", "graded.odd-square"})
                 t.run(id, 1000);
             return from(t);
         }},
        {2, "even Poisson axioms and initial conditions", 30,
         [] {
             Tally t;
             for (const char* id : {"poisson.antisymmetry", "poisson.jacobi", "poisson.leibniz",
                                    "poisson.initial-conditions"})
                 t.run(id, 500);
             t.run("poisson.canonical", 1);
             return from(t);
         }},
        {3, "(F,F) = 2 dF/dp dF/dx for odd F", 0,
         [] {
             Tally t;
             t.run("poisson.self-bracket", 100);
             return from(t);
         }},
        {4, "Cartan formula and [i_X,i_Y] = 0", 0,
         [] {
             Tally t;
             t.run("cartan.formula", 200);
             t.run("cartan.interior-commute", 200);
             return from(t);
         }},
        {5, "Schouten axioms from D, symmetric-convention round trip", 0,
         [] {
             Tally t;
             for (const char* id : {"schouten.antisymmetry", "schouten.jacobi", "schouten.leibniz",
                                    "schouten.symmetric-form"})
                 t.run(id, 200);
             t.run("schouten.canonical", 1);
             return from(t);
         }},
        {6, "higher derived brackets: Q^2 = 0 <=> generalized Jacobi", 0, criterion6},
        {7, "alpha intertwines the brackets; closed form of K_P", 60,
         [] {
             Tally t;
             t.run("alpha.intertwining", 100);
             t.run("alpha.display-even-base", 100);
             t.run("alpha.closed-form", 100);
             auto o = from(t);
             o.detail += " (literal display on an even base, general closed form on a 2|1 base)";
             return o;
         }},
        {8, "classical Koszul limit", 0, criterion8},
        {9, "higher Koszul brackets of functions and differentials, l <= 4", 0, criterion9},
        {10, "Lichnerowicz two routes, d_P^2 = 0, raising indices", 0, criterion10},
        {11, "argument shift: preservation, master, zero section, decomposition, weights", 60,
         [] {
             Tally t;
             t.run("shift.preservation", 200);
             t.run("shift.master", 40);
             t.run("shift.zero-section", 100);
             t.run("shift.decomposition", 100);
             t.run("bialgebroid.weights", 40);
             t.run("bialgebroid.sl2", 1);
             return from(t);
         }},
        {12, "Mackenzie-Xu relabeling is symplectic", 0,
         [] {
             Tally t;
             t.run("mx.even", 200);
             t.run("mx.odd", 200);
             return from(t);
         }},
        {13, "mutation sensitivity", 0, criterion13},
        {14, "CLI golden files and parser round trip", 0, criterion14},
    };

    int unexpected = 0, passed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit == 0 || secs < c.limit;
        bool pass = o.pass && in_time;
        passed += pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " -- " << o.detail << " ["
             << secs << " s" << (c.limit ? std::string(c.limit > secs ? " < " : " >= ") + std::to_string(int(c.limit)) + " s" : "")
             << "]";
        std::cout << line.str() << "\n";
        if (!pass) {
            bool documented = kDocumentedFailures.count(c.id) && o.corrected_ok && in_time;
            if (!documented) ++unexpected;
        } else if (kDocumentedFailures.count(c.id)) {
            std::cout << "  note: criterion " << c.id << " was expected to fail\n";
        }
    }
    std::cout << passed << "/" << criteria.size() << " criteria pass";
    if (unexpected == 0 && passed < static_cast<int>(criteria.size()))
        std::cout << "; the failures are the documented ones (corrected statements hold)";
    std::cout << "\n";
    return unexpected == 0 ? 0 : 1;
}
