#pragma once

#include <vector>

#include "cddp/geometry.hpp"

namespace cddp {

// Voronoi cell of site `index`, clipped to the rectangle [0,w]x[0,h].
// Computed by half-plane clipping against every bisector, which is robust
// and plenty fast for the station counts this tool sees. Vertices are in
// counter-clockwise order; empty if the cell lies outside the rectangle.
std::vector<Point2> voronoi_cell(const std::vector<Point2>& sites, int index, const Rect& region);

// Waypoint candidates of a station set inside a region: the Voronoi vertices
// lying in the region plus the intersections of Voronoi edges with the
// region boundary, deduplicated within `tolerance`. Region corners that
// belong to a single cell are not cell intersections and are excluded.
// Fewer than two sites have no bisectors, hence no waypoints.
std::vector<Point2> voronoi_waypoints(const std::vector<Point2>& sites, const Rect& region,
                                      double tolerance = 1e-6);

}  // namespace cddp
