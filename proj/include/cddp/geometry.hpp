#pragma once

#include <cmath>

namespace cddp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

// Axis-aligned service area anchored at the origin.
struct Rect {
    double width_m = 0.0;
    double height_m = 0.0;
};

inline double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Point at parameter t on the segment a->b (t in [0,1]).
inline Point2 lerp(const Point2& a, const Point2& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace cddp
