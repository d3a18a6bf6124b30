#pragma once

#include <string>

#include "cddp/instance.hpp"
#include "cddp/solution.hpp"

namespace cddp {

struct SvgConfig {
    double width_px = 900.0;   // rendered width; height follows the region aspect
    int samples_per_arc = 100; // resolution for spotting low-quality stretches

    void validate() const;  // throws std::invalid_argument
};

// Route map as a standalone SVG document. Layers, back to front: the
// stations' coverage cells (one deterministic pastel fill per station,
// dashed borders), the flown trips as per-drone colored polylines with the
// stretches whose sampled link quality drops below the outage threshold
// overdrawn thicker in red, the station markers, and the flyable-node
// glyphs (square depot, circle customer, diamond charging station, dot
// waypoint). An empty plan renders the map alone. Throws
// std::invalid_argument when the plan does not fit the instance.
std::string render_svg(const Instance& ins, const Plan& plan = {}, const SvgConfig& config = {});

}  // namespace cddp
