#pragma once

#include <string>

#include "falsify/falsifier.hpp"

namespace falsify {

/// Static plot of one run in world coordinates (y up): arena outline, red
/// obstacle rectangles, one gray dot per visited state (position x, y), and for
/// a counterexample a green initial-position dot, black target dot, the rover
/// body outline and the successor marker. A 1 m scale bar is included.
///
/// Element classes: "arena", "obstacle", "visited", "initial", "target",
/// "rover-body", "counterexample-successor", "scale-bar".
std::string render_run_svg(const RunSummary& run, const Scenario& scenario);

}  // namespace falsify
