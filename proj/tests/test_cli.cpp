#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "golden_runner.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = superbracket::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

// Each entry of golden/cases.json is {name, args}; "@/" in an argument is the
// golden directory. Expected stdout, stderr lines prefixed "stderr: " and an
// "exit: N" line are in <name>.out.
// SUPERBRACKET_UPDATE_GOLDEN=1 rewrites the files.
TEST_CASE("golden files") {
    auto results = sbt::run_goldens(SUPERBRACKET_TEST_DATA, std::getenv("SUPERBRACKET_UPDATE_GOLDEN") != nullptr);
    CHECK(results.size() >= 10);
    for (const auto& r : results) {
        INFO(r.name);
        CHECK(r.match);
    }
}

TEST_CASE("exit codes") {
    const std::string chart = std::string(SUPERBRACKET_TEST_DATA) + "/phase.chart";
    CHECK(run({"--chart", chart, "eval", "x1 + 1"}).code == 0);
    CHECK(run({"--chart", chart, "eval", "x1 +"}).code == 1);
    CHECK(run({"--chart", chart, "eval", "nope"}).code == 1);
    CHECK(run({"eval", "x1"}).code == 1);
    CHECK(run({"--chart", "/missing.chart", "eval", "x1"}).code == 1);
    CHECK(run({"--bogus"}).code == 1);
    CHECK(run({"--chart", chart, "shift", "--H", "p_x1", "--r", "x1"}).code == 2);
    CHECK(run({"--chart", chart, "verify", "master", "xi1*p_x1 + x1*p_x2*p_xi1"}).code == 2);
    CHECK(run({"--chart", chart, "verify", "master", "xi1*p_x1"}).code == 0);
}

TEST_CASE("json output has the documented shape") {
    const std::string chart = std::string(SUPERBRACKET_TEST_DATA) + "/phase.chart";
    Run r = run({"--json", "--chart", chart, "bracket", "p_x1*x2", "x1^2 + xi1"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["result"]["parity"] == "even");
    auto terms = j["result"]["terms"];
    CHECK(terms.size() == 1);
    CHECK(terms[0]["monomial"] == "x1*x2");
    CHECK(terms[0]["coefficient"] == "2");
}

TEST_CASE("text and json are exclusive") {
    CHECK(run({"--json", "--text", "eval", "1"}).code == 1);
}

}
