#pragma once

// Charts for M and the spaces built from it: T*M, Pi T*M, Pi TM, T*(Pi TM),
// vector bundles Pi E and their cotangents, plus the Mackenzie-Xu relabeling
// T*(Pi E) -> T*(Pi E*).

#include <string>
#include <utility>
#include <vector>

#include "superbracket/graded.hpp"

namespace superbracket {

/// A base chart from (name, parity) declarations.
SpacePtr base_space(const std::vector<std::pair<std::string, Parity>>& coordinates);

/// Adjoins a momentum of equal parity for every non-parameter variable (even pairs).
SpacePtr cotangent(const SpacePtr& s);
/// Adjoins an antimomentum of opposite parity for every non-parameter variable (odd pairs).
SpacePtr anticotangent(const SpacePtr& s);
/// Adjoins differentials dx of opposite parity. No pairs are added.
SpacePtr antitangent(const SpacePtr& s);

/// Adjoins fiber coordinates. With shifted = true the fibers have the reversed
/// parity (models Pi E). Fibers carry weight (0,1); momenta later get the
/// complementary weight so that the canonical form has weight (1,1).
SpacePtr vector_bundle(const SpacePtr& base, const std::vector<Parity>& fiber_parities, bool shifted,
                       const std::vector<std::string>& names = {});

/// Appends an even never-paired parameter (used for formal scalars such as t).
SpacePtr with_parameter(const SpacePtr& s, const std::string& name);

/// Appends extra coordinates (no pairs); used for auxiliary points.
SpacePtr with_coordinates(const SpacePtr& s, const std::vector<std::pair<std::string, Parity>>& coords);

/// Variables of the given role(s).
std::vector<std::size_t> variables_with_role(const Space& s, std::initializer_list<Role> roles);

/// Relabeling that exchanges each fiber coordinate with its conjugate momentum.
///
/// The source must be cotangent(vector_bundle(...)) (even case) or
/// anticotangent(vector_bundle(...)) (odd case), or the output of a previous
/// transform. The target chart has the same variable names; the old momentum
/// becomes the new fiber coordinate and the old fiber coordinate becomes the
/// new momentum up to a sign chosen so that the map preserves the canonical
/// bracket. Weights (w1, w2) are swapped.
struct MackenzieXu {
    SpacePtr source;
    SpacePtr target;
    Parity bracket = Parity::Even;
    std::vector<Poly> images;  // image of every source variable, on the target chart
    std::vector<int> signs;    // sign put on each former fiber coordinate (1 elsewhere)

    Poly apply(const Poly& f) const;
};

MackenzieXu mx_transform(const SpacePtr& s);

}  // namespace superbracket
