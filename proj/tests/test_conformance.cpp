#include "doctest.h"

#include <fstream>
#include <sstream>

#include "superbracket/conformance.hpp"

using namespace superbracket;
using namespace superbracket::conformance;

TEST_SUITE("conformance") {

TEST_CASE("manifest matches the checked-in copy") {
    std::ifstream f(SUPERBRACKET_TEST_DATA "/manifest.txt");
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == manifest());
}

TEST_CASE("registry ids are unique and every case has a trial") {
    std::set<std::string> ids;
    for (const auto& c : registry()) {
        CHECK(ids.insert(c.id).second);
        CHECK(static_cast<bool>(c.trial));
        CHECK(!c.identity.empty());
    }
    CHECK_THROWS_AS(find_case("no.such.case"), Error);
}

TEST_CASE("the suite passes under the pinned conventions") {
    SuiteOptions o;
    o.jobs = 4;
    auto rep = run_suite(o);
    CHECK(rep.failed_ids() == std::vector<std::string>{});
    std::size_t known = 0;
    for (const auto& r : rep.results)
        if (r.known_discrepancy) {
            ++known;
            CHECK(!r.passed);
            CHECK(r.counterexample);
        }
    CHECK(known == 4);
}

TEST_CASE("reports do not depend on the number of workers") {
    SuiteOptions a, b;
    a.filter = {"koszul", "graded.leibniz"};
    b.filter = a.filter;
    b.jobs = 5;
    CHECK(to_json(run_suite(a), false) == to_json(run_suite(b), false));
    b.seed = 2;
    CHECK(to_json(run_suite(a), false) != to_json(run_suite(b), false));
}

TEST_CASE("each pinned convention is guarded") {
    std::map<std::string, std::string> witness{{"master-sign", "schouten.canonical"},
                                               {"mx-sign", "mx.even"},
                                               {"interior-sign", "cartan.formula"},
                                               {"left-derivative", "graded.leibniz"}};
    for (const auto& m : mutations()) {
        SuiteOptions o;
        o.conventions = m.conventions;
        o.shrink = false;
        o.jobs = 4;
        auto failed = run_suite(o).failed_ids();
        INFO(m.name);
        CHECK(!failed.empty());
        CHECK(std::find(failed.begin(), failed.end(), witness[m.name]) != failed.end());
    }
}

TEST_CASE("counterexamples are shrunk") {
    SuiteOptions o;
    o.filter = {"alpha.display-odd-base"};
    auto rep = run_suite(o);
    REQUIRE(rep.results.size() == 1);
    const auto& r = rep.results.front();
    REQUIRE(r.counterexample_size);
    const auto& c = find_case(r.id);
    CHECK(r.counterexample_size->degree < c.size.degree);
    CHECK(r.counterexample_size->variables >= c.min_size.variables);
    CHECK(r.counterexample->violations > 0);
}

TEST_CASE("sample count override") {
    auto r = run_case(find_case("graded.unit"), 1, 3);
    CHECK(r.samples == 3);
    CHECK(r.passed);
}

}
