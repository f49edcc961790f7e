#pragma once

#include <string>

#include "superbracket/brackets.hpp"
#include "superbracket/graded.hpp"

namespace superbracket {

/// Plain-text form in canonical term order, e.g. "x1^2 - 1/2*xi1*xi2 + 3".
/// The output re-parses to the same Poly.
std::string to_text(const Poly& f);

/// Single monomial in canonical variable order ("1" for the unit).
std::string to_text(const Monomial& m, const Space& s);

std::string to_text(const VectorField& x);

std::string to_text(Weight w);

}  // namespace superbracket
