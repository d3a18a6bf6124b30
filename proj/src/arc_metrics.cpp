#include "cddp/arc_metrics.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cddp {

std::vector<Point2> sample_path(const Point2& v1, const Point2& v2, int r) {
    if (r < 1) throw std::invalid_argument("sample_path: segment count must be >= 1");
    std::vector<Point2> points;
    points.reserve(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k)
        points.push_back(lerp(v1, v2, static_cast<double>(k) / static_cast<double>(r)));
    points.front() = v1;
    points.back() = v2;
    return points;
}

int handover_count(const std::vector<int>& serving_ids) {
    int changes = 0;
    for (std::size_t k = 1; k < serving_ids.size(); ++k)
        if (serving_ids[k] != serving_ids[k - 1]) ++changes;
    return changes;
}

int handover_count(const CommNetwork& network, const Point2& v1, const Point2& v2, int r) {
    const std::vector<Point2> points = sample_path(v1, v2, r);
    std::vector<int> serving;
    serving.reserve(points.size());
    for (const Point2& p : points) serving.push_back(network.serving_cn(p));
    return handover_count(serving);
}

double outage_probability(const std::vector<double>& se_values, double threshold) {
    if (se_values.empty()) return 0.0;
    int in_outage = 0;
    for (double se : se_values)
        if (se < threshold) ++in_outage;
    return static_cast<double>(in_outage) / static_cast<double>(se_values.size());
}

double outage_probability(const CommNetwork& network, const Point2& v1, const Point2& v2, int r) {
    const std::vector<Point2> points = sample_path(v1, v2, r);
    std::vector<double> se;
    se.reserve(points.size());
    for (const Point2& p : points) se.push_back(network.serving_spectral_efficiency(p));
    return outage_probability(se, network.params().se_threshold);
}

void MetricConfig::validate() const {
    if (r_segments < 1) throw std::invalid_argument("metric_config: r_segments must be >= 1");
    if (speed_mps <= 0.0) throw std::invalid_argument("metric_config: speed must be > 0");
    if (battery_range_m <= 0.0) throw std::invalid_argument("metric_config: battery range must be > 0");
}

MetricMatrix build_metric_matrix(std::span<const Point2> nodes, const CommNetwork& network,
                                 const MetricConfig& config) {
    if (nodes.size() < 2) throw std::invalid_argument("build_metric_matrix: need >= 2 nodes");
    config.validate();

    const int n = static_cast<int>(nodes.size());
    MetricMatrix matrix(n, config.r_segments);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            ArcMetrics m;
            m.distance_m = distance(nodes[static_cast<std::size_t>(i)],
                                    nodes[static_cast<std::size_t>(j)]);
            m.travel_time_s = m.distance_m / config.speed_mps;
            m.battery_cost = m.distance_m / config.battery_range_m;
            if (m.distance_m > 0.0) {
                m.handovers = handover_count(network, nodes[static_cast<std::size_t>(i)],
                                             nodes[static_cast<std::size_t>(j)], config.r_segments);
                m.outage_prob = outage_probability(network, nodes[static_cast<std::size_t>(i)],
                                                   nodes[static_cast<std::size_t>(j)],
                                                   config.r_segments);
            }
            m.outage_duration_s = outage_duration(m.outage_prob, m.travel_time_s);
            // The reversed arc samples the same points, so the communication
            // metrics carry over unchanged.
            matrix.at(i, j) = m;
            matrix.at(j, i) = m;
        }
    }
    return matrix;
}

void save_metric_matrix(const MetricMatrix& matrix, const std::string& key,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write metric cache: " + path);
    const int n = matrix.node_count();
    out << "cddp-metrics 1 " << key << ' ' << matrix.r_segments() << ' ' << n << '\n';
    char line[192];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ArcMetrics& m = matrix.at(i, j);
            std::snprintf(line, sizeof line, "%.17g %.17g %.17g %d %.17g %.17g\n", m.distance_m,
                          m.travel_time_s, m.battery_cost, m.handovers, m.outage_prob,
                          m.outage_duration_s);
            out << line;
        }
    }
}

bool load_metric_matrix(const std::string& path, const std::string& key, int r_segments,
                        int node_count, MetricMatrix& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string magic, file_key;
    int version = 0, r = 0, n = 0;
    if (!(in >> magic >> version >> file_key >> r >> n)) return false;
    if (magic != "cddp-metrics" || version != 1 || file_key != key || r != r_segments ||
        n != node_count)
        return false;
    MetricMatrix matrix(n, r);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ArcMetrics& m = matrix.at(i, j);
            if (!(in >> m.distance_m >> m.travel_time_s >> m.battery_cost >> m.handovers >>
                  m.outage_prob >> m.outage_duration_s))
                return false;
        }
    }
    out = std::move(matrix);
    return true;
}

}  // namespace cddp
