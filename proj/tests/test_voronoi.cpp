#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cddp/voronoi.hpp"

using namespace cddp;

namespace {

bool contains_point(const std::vector<Point2>& pts, double x, double y, double tol = 1e-6) {
    return std::any_of(pts.begin(), pts.end(), [&](const Point2& p) {
        return std::abs(p.x - x) <= tol && std::abs(p.y - y) <= tol;
    });
}

}  // namespace

TEST_CASE("two sites: the bisector cuts the region into two half-rectangles") {
    const std::vector<Point2> sites{{0.0, 0.0}, {1000.0, 0.0}};
    const Rect region{1000.0, 1000.0};

    const std::vector<Point2> cell0 = voronoi_cell(sites, 0, region);
    REQUIRE(cell0.size() == 4);
    double min_x = 1e18, max_x = -1e18, min_y = 1e18, max_y = -1e18;
    for (const Point2& p : cell0) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    CHECK(min_x == doctest::Approx(0.0));
    CHECK(max_x == doctest::Approx(500.0));
    CHECK(min_y == doctest::Approx(0.0));
    CHECK(max_y == doctest::Approx(1000.0));

    // No interior vertices; the bisector meets the boundary twice.
    const std::vector<Point2> wps = voronoi_waypoints(sites, region);
    REQUIRE(wps.size() == 2);
    CHECK(contains_point(wps, 500.0, 0.0));
    CHECK(contains_point(wps, 500.0, 1000.0));
}

TEST_CASE("three sites: circumcenter vertex plus three boundary crossings") {
    const std::vector<Point2> sites{{200.0, 200.0}, {800.0, 300.0}, {400.0, 700.0}};
    const Rect region{1000.0, 1000.0};

    const std::vector<Point2> wps = voronoi_waypoints(sites, region);
    REQUIRE(wps.size() == 4);
    CHECK(contains_point(wps, 3350.0 / 7.0, 2650.0 / 7.0));  // circumcenter
    CHECK(contains_point(wps, 1625.0 / 3.0, 0.0));
    CHECK(contains_point(wps, 1000.0, 900.0));
    CHECK(contains_point(wps, 0.0, 570.0));
}

TEST_CASE("region corners owned by a single cell are not waypoints") {
    const std::vector<Point2> sites{{200.0, 200.0}, {800.0, 300.0}, {400.0, 700.0}};
    const std::vector<Point2> wps = voronoi_waypoints(sites, {1000.0, 1000.0});
    CHECK_FALSE(contains_point(wps, 0.0, 0.0));
    CHECK_FALSE(contains_point(wps, 1000.0, 0.0));
    CHECK_FALSE(contains_point(wps, 0.0, 1000.0));
    CHECK_FALSE(contains_point(wps, 1000.0, 1000.0));
}

TEST_CASE("nine stations on the diagonals give sixteen waypoints") {
    // 3x3 diagonal arrangement over a 1 km square zone.
    const std::vector<Point2> sites{{0.0, 0.0},      {250.0, 250.0},  {500.0, 500.0},
                                    {750.0, 750.0},  {1000.0, 1000.0}, {0.0, 1000.0},
                                    {250.0, 750.0},  {750.0, 250.0},  {1000.0, 0.0}};
    const Rect region{1000.0, 1000.0};
    const std::vector<Point2> wps = voronoi_waypoints(sites, region);
    CHECK(wps.size() == 16);
    for (const Point2& p : wps) {
        CHECK(p.x >= -1e-9);
        CHECK(p.x <= 1000.0 + 1e-9);
        CHECK(p.y >= -1e-9);
        CHECK(p.y <= 1000.0 + 1e-9);
    }
    // The layout is symmetric about the main diagonal, so the waypoint set is
    // closed under (x, y) -> (y, x).
    for (const Point2& p : wps) CHECK(contains_point(wps, p.y, p.x));
}

TEST_CASE("degenerate inputs give empty waypoint sets") {
    CHECK(voronoi_waypoints({}, {1000.0, 1000.0}).empty());
    CHECK(voronoi_waypoints({{500.0, 500.0}}, {1000.0, 1000.0}).empty());
}

TEST_CASE("cells of sites far outside the region are empty") {
    const std::vector<Point2> sites{{500.0, 500.0}, {50000.0, 50000.0}};
    const std::vector<Point2> cell1 = voronoi_cell(sites, 1, {1000.0, 1000.0});
    CHECK(cell1.empty());
}

TEST_CASE("cell vertices are ordered counter-clockwise") {
    const std::vector<Point2> sites{{200.0, 200.0}, {800.0, 300.0}, {400.0, 700.0}};
    for (int i = 0; i < 3; ++i) {
        const std::vector<Point2> cell = voronoi_cell(sites, i, {1000.0, 1000.0});
        REQUIRE(cell.size() >= 3);
        double twice_area = 0.0;
        for (std::size_t k = 0; k < cell.size(); ++k) {
            const Point2& a = cell[k];
            const Point2& b = cell[(k + 1) % cell.size()];
            twice_area += a.x * b.y - b.x * a.y;
        }
        CHECK(twice_area > 0.0);
    }
}
