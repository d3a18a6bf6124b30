#pragma once

#include <span>
#include <string>
#include <vector>

#include "cddp/comm_model.hpp"
#include "cddp/geometry.hpp"

namespace cddp {

// Per-arc quantities used by every downstream evaluation. The expected
// outage duration is always outage_prob * travel_time_s.
struct ArcMetrics {
    double distance_m = 0.0;
    double travel_time_s = 0.0;
    double battery_cost = 0.0;  // fraction of a full charge
    int handovers = 0;
    double outage_prob = 0.0;
    double outage_duration_s = 0.0;
};

struct MetricConfig {
    int r_segments = 100;
    double speed_mps = 15.0;
    double battery_range_m = 15000.0;

    void validate() const;  // throws std::invalid_argument
};

// r+1 equally spaced points from v1 to v2 inclusive. r must be >= 1.
std::vector<Point2> sample_path(const Point2& v1, const Point2& v2, int r);

// Number of adjacent changes in a serving-station id sequence.
int handover_count(const std::vector<int>& serving_ids);
// Serving-cell changes between consecutive sample points of the arc v1->v2.
int handover_count(const CommNetwork& network, const Point2& v1, const Point2& v2, int r);

// Fraction of values strictly below the threshold; zero for an empty list.
double outage_probability(const std::vector<double>& se_values, double threshold);
// Fraction of the r+1 sample points whose spectral efficiency from the
// serving station falls strictly below the configured threshold.
double outage_probability(const CommNetwork& network, const Point2& v1, const Point2& v2, int r);

inline double outage_duration(double outage_prob, double travel_time_s) {
    return outage_prob * travel_time_s;
}

// Dense all-pairs arc metrics over the flyable nodes. Diagonal entries are
// all-zero; arcs longer than the battery range are stored as-is (the
// feasibility checker surfaces them, not the matrix).
class MetricMatrix {
  public:
    MetricMatrix() = default;
    MetricMatrix(int node_count, int r_segments)
        : n_(node_count), r_segments_(r_segments),
          cells_(static_cast<std::size_t>(node_count) * static_cast<std::size_t>(node_count)) {}

    const ArcMetrics& at(int i, int j) const {
        return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(j)];
    }
    ArcMetrics& at(int i, int j) {
        return cells_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(j)];
    }

    int node_count() const { return n_; }
    int r_segments() const { return r_segments_; }

  private:
    int n_ = 0;
    int r_segments_ = 0;
    std::vector<ArcMetrics> cells_;
};

MetricMatrix build_metric_matrix(std::span<const Point2> nodes, const CommNetwork& network,
                                 const MetricConfig& config);

// Textual sidecar cache, keyed by instance hash and segment count. Format:
// one header line "cddp-metrics 1 <key> <r> <n>", then n*n lines of six
// fields in row-major order, printed with %.17g so reloads are bit-exact.
void save_metric_matrix(const MetricMatrix& matrix, const std::string& key,
                        const std::string& path);
// Returns false if the file is missing or its key/r/n do not match.
bool load_metric_matrix(const std::string& path, const std::string& key, int r_segments,
                        int node_count, MetricMatrix& out);

}  // namespace cddp
