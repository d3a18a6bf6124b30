#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cddp/arc_metrics.hpp"
#include "cddp/comm_model.hpp"
#include "cddp/geometry.hpp"

namespace cddp {

enum class NodeKind { Depot, Customer, ChargingStation, Waypoint };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);  // throws on unknown kind

struct Node {
    int id = 0;
    NodeKind kind = NodeKind::Depot;
    Point2 position;
};

struct Customer {
    int node_id = 0;
    double window_start_s = 0.0;
    double window_end_s = 0.0;
    double service_time_s = 60.0;
};

struct Drone {
    int id = 0;
    int start_depot = 0;
    int end_depot = 0;
};

// Fixed time a drone spends at each node kind (loading, unloading, swapping).
struct OpTimes {
    double depot_s = 120.0;
    double customer_s = 60.0;
    double charging_station_s = 180.0;
    double waypoint_s = 0.0;

    double of(NodeKind kind) const;
};

// Per-trip QoS limits; infinity disables a limit.
struct Thresholds {
    double h_max = std::numeric_limits<double>::infinity();
    double o_max_s = std::numeric_limits<double>::infinity();
};

// A complete problem instance. Flyable node ids are contiguous, assigned in
// the order depots, customers, charging stations, waypoints, so genome
// encodings stay portable across save/load.
struct Instance {
    int version = 1;
    Rect region;
    double horizon_s = 28800.0;
    CommNetwork comm;
    std::vector<Node> nodes;
    std::vector<Customer> customers;  // aligned with the customer nodes, in id order
    std::vector<Drone> drones;
    OpTimes op_times;
    Thresholds thresholds;
    MetricConfig metric_config;

    int flyable_count() const { return static_cast<int>(nodes.size()); }
    int customer_count() const { return static_cast<int>(customers.size()); }
    int drone_count() const { return static_cast<int>(drones.size()); }

    NodeKind kind_of(int node_id) const { return nodes[static_cast<std::size_t>(node_id)].kind; }
    const Point2& position_of(int node_id) const {
        return nodes[static_cast<std::size_t>(node_id)].position;
    }
    std::vector<int> depot_ids() const;
    // Index into `customers` for a customer node id, -1 otherwise.
    int customer_index(int node_id) const;

    std::vector<Point2> node_positions() const;
    MetricMatrix build_metrics() const;

    void validate() const;  // throws std::invalid_argument
};

// JSON round trip. Parse errors carry the offending field in the message.
std::string instance_to_json(const Instance& instance, int indent = 2);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

// FNV-1a hash of the canonical JSON form, as a 16-digit hex string; used to
// key metric caches and run directories.
std::string instance_hash(const Instance& instance);

bool instances_equal(const Instance& a, const Instance& b);

}  // namespace cddp
