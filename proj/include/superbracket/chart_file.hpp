#pragma once

// Line-oriented chart definitions:
//
//   # comment
//   var x1 even
//   var xi1 odd
//   var t param                       even parameter (no momentum)
//   apply cotangent | anticotangent | antitangent
//   apply bundle rank=2 shifted=true [parities=eo]
//   let H = xi1*p_x1
//
// Directives apply left to right; `let` values are re-expressed on the final chart.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superbracket/expr.hpp"

namespace superbracket {

struct ChartDocument {
    SpacePtr chart;
    std::vector<std::pair<std::string, Poly>> lets;  // in definition order, on `chart`

    expr::Evaluator evaluator() const;
};

ChartDocument load_chart(std::string_view text);
ChartDocument load_chart_file(const std::string& path);

}  // namespace superbracket
