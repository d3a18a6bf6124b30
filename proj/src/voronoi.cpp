#include "cddp/voronoi.hpp"

#include <cstdlib>
#include <set>
#include <vector>

namespace cddp {

namespace {

// Sutherland-Hodgman clip of a convex polygon against a*x + b*y <= c.
std::vector<Point2> clip_half_plane(const std::vector<Point2>& poly, double a, double b, double c) {
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        const double fp = a * p.x + b * p.y - c;
        const double fq = a * q.x + b * q.y - c;
        if (fp <= 0.0) {
            out.push_back(p);
            if (fq > 0.0) {
                const double t = fp / (fp - fq);
                out.push_back(lerp(p, q, t));
            }
        } else if (fq <= 0.0) {
            const double t = fp / (fp - fq);
            out.push_back(lerp(p, q, t));
        }
    }
    return out;
}

}  // namespace

std::vector<Point2> voronoi_cell(const std::vector<Point2>& sites, int index, const Rect& region) {
    std::vector<Point2> poly = {
        {0.0, 0.0}, {region.width_m, 0.0}, {region.width_m, region.height_m}, {0.0, region.height_m}};
    const Point2 s = sites[static_cast<std::size_t>(index)];
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (static_cast<int>(j) == index) continue;
        const Point2 t = sites[j];
        // |p - s|^2 <= |p - t|^2  <=>  2(t - s) . p <= |t|^2 - |s|^2
        const double a = 2.0 * (t.x - s.x);
        const double b = 2.0 * (t.y - s.y);
        const double c = t.x * t.x + t.y * t.y - s.x * s.x - s.y * s.y;
        poly = clip_half_plane(poly, a, b, c);
        if (poly.empty()) break;
    }
    return poly;
}

std::vector<Point2> voronoi_waypoints(const std::vector<Point2>& sites, const Rect& region,
                                      double tolerance) {
    std::vector<Point2> points;
    std::vector<std::set<int>> owners;
    if (sites.size() < 2) return points;

    auto add = [&](const Point2& p, int cell) {
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (std::abs(p.x - points[k].x) <= tolerance &&
                std::abs(p.y - points[k].y) <= tolerance) {
                owners[k].insert(cell);
                return;
            }
        }
        points.push_back(p);
        owners.push_back({cell});
    };

    for (std::size_t i = 0; i < sites.size(); ++i)
        for (const Point2& v : voronoi_cell(sites, static_cast<int>(i), region))
            add(v, static_cast<int>(i));

    // An interior vertex shared by >= 3 cells is a Voronoi vertex; a boundary
    // vertex shared by >= 2 cells is a cell-edge/boundary intersection. Region
    // corners owned by one cell are ordinary polygon corners and are dropped.
    std::vector<Point2> waypoints;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Point2& p = points[k];
        const bool on_boundary = p.x <= tolerance || p.x >= region.width_m - tolerance ||
                                 p.y <= tolerance || p.y >= region.height_m - tolerance;
        const std::size_t needed = on_boundary ? 2 : 3;
        if (owners[k].size() >= needed) waypoints.push_back(p);
    }
    return waypoints;
}

}  // namespace cddp
