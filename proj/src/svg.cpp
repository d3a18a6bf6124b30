#include "cddp/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "cddp/voronoi.hpp"

namespace cddp {

namespace {

// Plain decimal with two digits after the point, trimmed; keeps the files
// compact, diff-stable, and free of exponent notation.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string hsl_hex(double h, double s, double l) {
    const double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
    const double hp = std::fmod(h, 360.0) / 60.0;
    const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = l - c / 2.0;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>((r + m) * 255.0 + 0.5),
                  static_cast<int>((g + m) * 255.0 + 0.5),
                  static_cast<int>((b + m) * 255.0 + 0.5));
    return buf;
}

// Trip stroke colors, cycled per drone. Red stays reserved for outage.
constexpr const char* kTripColors[] = {"#1d4ed8", "#7c3aed", "#0f766e", "#334155",
                                       "#b45309", "#0284c7", "#4d7c0f", "#86198f"};

}  // namespace

void SvgConfig::validate() const {
    if (!(width_px > 0.0)) throw std::invalid_argument("svg width must be positive");
    if (samples_per_arc < 1) throw std::invalid_argument("svg needs at least one sample segment");
}

std::string render_svg(const Instance& ins, const Plan& plan, const SvgConfig& config) {
    config.validate();
    if (!plan.trips_by_drone.empty() &&
        plan.trips_by_drone.size() != static_cast<std::size_t>(ins.drone_count()))
        throw std::invalid_argument("plan has " + std::to_string(plan.trips_by_drone.size()) +
                                    " drones but the instance has " +
                                    std::to_string(ins.drone_count()));
    for (const auto& trips : plan.trips_by_drone)
        for (const Trip& trip : trips) {
            if (trip.nodes.size() < 2)
                throw std::invalid_argument("a trip needs at least two nodes to draw");
            for (int id : trip.nodes)
                if (id < 0 || id >= ins.flyable_count())
                    throw std::invalid_argument("trip references node " + std::to_string(id) +
                                                " outside the instance");
        }

    const double W = ins.region.width_m;
    const double H = ins.region.height_m;
    const double dim = std::max(W, H);
    const double margin = 0.04 * dim;
    const auto Y = [H](double y) { return H - y; };  // plot convention: y grows upward

    const double cell_sw = dim / 700.0;
    const double trip_sw = dim / 320.0;
    const double red_sw = 2.4 * trip_sw;
    const double glyph = dim / 110.0;

    std::string out;
    out.reserve(1 << 16);
    const double vw = W + 2.0 * margin, vh = H + 2.0 * margin;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(-margin) + " " +
           fmt(-margin) + " " + fmt(vw) + " " + fmt(vh) + "\" width=\"" + fmt(config.width_px) +
           "\" height=\"" + fmt(config.width_px * vh / vw) + "\">\n";
    out += "<rect x=\"" + fmt(-margin) + "\" y=\"" + fmt(-margin) + "\" width=\"" + fmt(vw) +
           "\" height=\"" + fmt(vh) + "\" fill=\"#ffffff\"/>\n";

    // Coverage cells, one pastel per station, dashed borders.
    std::vector<Point2> sites;
    for (const BaseStation& s : ins.comm.stations()) sites.push_back(s.position);
    out += "<g stroke=\"#64748b\" stroke-width=\"" + fmt(cell_sw) + "\" stroke-dasharray=\"" +
           fmt(6.0 * cell_sw) + " " + fmt(4.0 * cell_sw) + "\">\n";
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::vector<Point2> cell =
            voronoi_cell(sites, static_cast<int>(i), ins.region);
        if (cell.size() < 3) continue;
        out += "<polygon fill=\"" + hsl_hex(static_cast<double>(i) * 137.508, 0.5, 0.86) +
               "\" points=\"";
        for (std::size_t t = 0; t < cell.size(); ++t) {
            if (t) out += ' ';
            out += fmt(cell[t].x) + "," + fmt(Y(cell[t].y));
        }
        out += "\"/>\n";
    }
    out += "</g>\n";

    // Trips, then their low-quality stretches on top.
    std::string red_layer;
    for (std::size_t u = 0; u < plan.trips_by_drone.size(); ++u) {
        const char* color = kTripColors[u % (sizeof kTripColors / sizeof *kTripColors)];
        for (const Trip& trip : plan.trips_by_drone[u]) {
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"" + fmt(trip_sw) + "\" points=\"";
            for (std::size_t t = 0; t < trip.nodes.size(); ++t) {
                const Point2& p = ins.position_of(trip.nodes[t]);
                if (t) out += ' ';
                out += fmt(p.x) + "," + fmt(Y(p.y));
            }
            out += "\"/>\n";

            // Sample each leg; a sub-segment is drawn red when either of its
            // endpoints falls below the outage threshold.
            for (std::size_t t = 0; t + 1 < trip.nodes.size(); ++t) {
                const std::vector<Point2> pts =
                    sample_path(ins.position_of(trip.nodes[t]),
                                ins.position_of(trip.nodes[t + 1]), config.samples_per_arc);
                std::vector<bool> low(pts.size());
                for (std::size_t s = 0; s < pts.size(); ++s)
                    low[s] = ins.comm.serving_spectral_efficiency(pts[s]) <
                             ins.comm.params().se_threshold;
                std::size_t s = 0;
                while (s + 1 < pts.size()) {
                    if (!(low[s] || low[s + 1])) {
                        ++s;
                        continue;
                    }
                    std::size_t e = s;  // maximal run of red segments
                    while (e + 1 < pts.size() && (low[e] || low[e + 1])) ++e;
                    red_layer += "<polyline fill=\"none\" stroke=\"#dc2626\" stroke-width=\"" +
                                 fmt(red_sw) + "\" stroke-linecap=\"round\" points=\"";
                    for (std::size_t q = s; q <= e; ++q) {
                        if (q > s) red_layer += ' ';
                        red_layer += fmt(pts[q].x) + "," + fmt(Y(pts[q].y));
                    }
                    red_layer += "\"/>\n";
                    s = e;
                }
            }
        }
    }
    out += red_layer;

    // Station markers: filled triangles at the cell seeds.
    for (const BaseStation& s : ins.comm.stations()) {
        const double r = glyph * 0.9;
        const double cx = s.position.x, cy = Y(s.position.y);
        out += "<path fill=\"#0f172a\" d=\"M" + fmt(cx) + " " + fmt(cy - r) + " L" +
               fmt(cx + 0.87 * r) + " " + fmt(cy + 0.5 * r) + " L" + fmt(cx - 0.87 * r) + " " +
               fmt(cy + 0.5 * r) + " Z\"/>\n";
    }

    // Flyable-node glyphs, one shape per kind.
    for (const Node& node : ins.nodes) {
        const double cx = node.position.x, cy = Y(node.position.y);
        switch (node.kind) {
            case NodeKind::Depot:
                out += "<rect x=\"" + fmt(cx - glyph) + "\" y=\"" + fmt(cy - glyph) +
                       "\" width=\"" + fmt(2.0 * glyph) + "\" height=\"" + fmt(2.0 * glyph) +
                       "\" fill=\"#0f172a\" stroke=\"#ffffff\" stroke-width=\"" +
                       fmt(cell_sw) + "\"/>\n";
                break;
            case NodeKind::Customer:
                out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(glyph) +
                       "\" fill=\"#d97706\" stroke=\"#ffffff\" stroke-width=\"" + fmt(cell_sw) +
                       "\"/>\n";
                break;
            case NodeKind::ChargingStation:
                out += "<path fill=\"#059669\" stroke=\"#ffffff\" stroke-width=\"" +
                       fmt(cell_sw) + "\" d=\"M" + fmt(cx) + " " + fmt(cy - 1.2 * glyph) + " L" +
                       fmt(cx + 1.2 * glyph) + " " + fmt(cy) + " L" + fmt(cx) + " " +
                       fmt(cy + 1.2 * glyph) + " L" + fmt(cx - 1.2 * glyph) + " " + fmt(cy) +
                       " Z\"/>\n";
                break;
            case NodeKind::Waypoint:
                out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" +
                       fmt(0.45 * glyph) + "\" fill=\"#475569\"/>\n";
                break;
        }
    }

    out += "</svg>\n";
    return out;
}

}  // namespace cddp
