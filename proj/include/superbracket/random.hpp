#pragma once

// Seeded generators of random graded polynomials for property checks.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "superbracket/brackets.hpp"
#include "superbracket/graded.hpp"

namespace superbracket {

class PolyGenerator {
public:
    explicit PolyGenerator(std::uint64_t seed) : rng_(seed) {}

    /// Integer in [lo, hi]; portable (no std distributions).
    long uniform(long lo, long hi);
    bool coin() { return uniform(0, 1) == 1; }

    struct Shape {
        std::vector<std::size_t> vars;  // allowed variables (all when empty)
        unsigned max_degree = 3;
        unsigned max_terms = 4;
        long coefficient_range = 3;     // coefficients in [-r, r] \ {0}
        std::optional<Parity> parity;   // homogeneous of this parity when set
        bool allow_constant = true;
    };

    Poly poly(const SpacePtr& s, const Shape& shape);
    Rational coefficient(long range);
    Parity parity() { return coin() ? Parity::Odd : Parity::Even; }

private:
    std::mt19937_64 rng_;
};

/// Homological field Q ([Q,Q] = 0 exactly) obtained by conjugating a linear
/// one (pairs theta_i d/dx_i, plus a constant odd part when `curved`) with a
/// random triangular polynomial automorphism.
VectorField homological_field(PolyGenerator& gen, const SpacePtr& chart, bool curved, unsigned max_degree = 3);

}  // namespace superbracket
