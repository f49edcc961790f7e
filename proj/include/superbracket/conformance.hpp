#pragma once

// Named, reproducible identity checks. Each case draws samples from a seeded
// generator at a given size (polynomial degree, number of chart variables);
// a failing case is shrunk by degree first, then by variable count.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "superbracket/conventions.hpp"
#include "superbracket/random.hpp"

namespace superbracket::conformance {

struct Size {
    unsigned degree = 3;
    unsigned variables = 3;
};

/// Outcome of one sample: `violations` counts nonzero residual terms (0 = holds).
struct Trial {
    std::string instance;
    std::size_t violations = 0;
};

struct IdentityCase {
    std::string id;
    std::string identity;           // the statement checked, in plain text
    std::vector<std::string> tags;
    std::string fixture;            // chart(s) used
    unsigned samples = 20;
    Size size;                      // largest size drawn
    Size min_size{0, 1};            // shrinking stops here
    // The statement as usually written is known not to hold; the case records
    // the discrepancy and does not count as a suite failure.
    bool known_discrepancy = false;
    std::function<Trial(PolyGenerator&, Size)> trial;
};

const std::vector<IdentityCase>& registry();
const IdentityCase& find_case(const std::string& id);

struct CaseResult {
    std::string id;
    bool passed = false;             // every sample holds
    bool known_discrepancy = false;
    unsigned samples = 0;
    std::size_t failing_samples = 0;
    std::size_t residual_terms = 0;  // summed over samples
    std::optional<Trial> counterexample;  // shrunk
    std::optional<Size> counterexample_size;
    double seconds = 0;
};

/// Runs one case; `samples` overrides the registered count.
CaseResult run_case(const IdentityCase& c, std::uint64_t seed, std::optional<unsigned> samples = std::nullopt);

struct SuiteOptions {
    std::set<std::string> filter;   // tags or ids; empty = everything
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    Conventions conventions{};      // in force on every worker
    bool shrink = true;
};

struct SuiteReport {
    std::uint64_t seed = 1;
    std::vector<CaseResult> results;  // registry order
    std::size_t passed() const;
    /// Failures among cases without a known discrepancy.
    std::size_t failed() const;
    std::vector<std::string> failed_ids() const;
};

SuiteReport run_suite(const SuiteOptions& opt);

/// Machine-readable report (JSON text).
std::string to_json(const SuiteReport& r, bool with_timing = true);

/// One line per case: id, tags, identity.
std::string manifest();

/// The four pinned sign conventions, each flipped on its own.
struct Mutation {
    std::string name;
    Conventions conventions;
};
std::vector<Mutation> mutations();

}  // namespace superbracket::conformance
