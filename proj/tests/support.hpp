#pragma once

#include <string>

#include "superbracket/expr.hpp"
#include "superbracket/format.hpp"
#include "superbracket/geometry.hpp"

namespace sbt {

using namespace superbracket;

inline SpacePtr base22() {
    return base_space({{"x1", Parity::Even}, {"x2", Parity::Even}, {"xi1", Parity::Odd}, {"xi2", Parity::Odd}});
}

inline SpacePtr base21() {
    return base_space({{"x1", Parity::Even}, {"x2", Parity::Even}, {"xi1", Parity::Odd}});
}

inline Poly P(const SpacePtr& s, const std::string& text) { return expr::Evaluator(s).eval(text); }

}  // namespace sbt
