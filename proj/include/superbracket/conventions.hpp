#pragma once

namespace superbracket {

/// The global sign choices of the engine. Every one of them is pinned by at
/// least one conformance case; flipping any single one makes a named case fail.
struct Conventions {
    int master_sign = 1;         // D = master_sign * pi^a p_a
    int mx_sign = 1;             // extra factor on the Mackenzie-Xu relabeling
    int interior_sign = 1;       // i_X = interior_sign * (-1)^X X^a d/d(dx^a)
    bool left_derivative = true; // partial derivatives act from the left
};

/// Conventions in force on the calling thread.
const Conventions& conventions();

/// Overrides the conventions for the lifetime of the guard (calling thread only).
/// Used by the mutation cases of the conformance suite.
class ScopedConventions {
public:
    explicit ScopedConventions(const Conventions& c);
    ~ScopedConventions();
    ScopedConventions(const ScopedConventions&) = delete;
    ScopedConventions& operator=(const ScopedConventions&) = delete;

private:
    Conventions saved_;
};

}  // namespace superbracket
