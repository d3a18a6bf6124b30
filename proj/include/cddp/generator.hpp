#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cddp/instance.hpp"
#include "cddp/rng.hpp"

namespace cddp {

// Benchmark generator settings. The three-letter code picks the scenario
// family: first letter U/P = uniform or perturbed station grid, second letter
// U/P = uniform or clustered (hotpoint) customers, third letter L/T = loose
// or tight time windows, e.g. "PUT".
struct GeneratorConfig {
    std::string setting = "UUL";
    int n_customers = 10;
    std::uint64_t seed = 0;

    Rect region{5000.0, 5000.0};
    double horizon_s = 28800.0;

    double hex_radius_m = 1000.0;      // station lattice circumradius
    double perturbation_m = 300.0;     // max station displacement in the P grid
    double station_tx_power_dbm = 46.0;

    double depot_spacing_m = 2000.0;
    double cs_spacing_m = 1000.0;

    int hotpoint_count = 0;            // 0 -> max(2, n_customers / 10)
    double cluster_sigma_m = 250.0;    // spread of each customer cluster

    int customers_per_drone = 25;

    CommParams comm_params;
    OpTimes op_times;
    Thresholds thresholds;
    MetricConfig metric_config;

    bool perturbed_network() const { return setting.size() == 3 && setting[0] == 'P'; }
    bool clustered_customers() const { return setting.size() == 3 && setting[1] == 'P'; }
    bool tight_windows() const { return setting.size() == 3 && setting[2] == 'T'; }
    int effective_hotpoints() const;

    void validate() const;  // throws std::invalid_argument
};

// Station centers on a hexagonal lattice: rows 1.5*radius apart vertically,
// sqrt(3)*radius apart horizontally, odd rows shifted by half a column, and a
// center is kept when it lies in the region inflated by one radius. Anchored
// at (0,0); enumeration order (row-major) fixes the station ids.
std::vector<Point2> hex_lattice_centers(const Rect& region, double radius);

// Square lattices anchored at (0,0), boundary points included. Charging
// stations that coincide with a depot are dropped (the depot already serves
// both roles).
std::vector<Point2> depot_lattice(const Rect& region, double spacing);
std::vector<Point2> charging_station_lattice(const Rect& region, double depot_spacing,
                                             double cs_spacing);

// Each generation step consumes the shared RNG stream in a documented order,
// so the whole pipeline is a pure function of the config (see
// generate_instance below).
CommNetwork generate_comm_network(const GeneratorConfig& config, Rng& rng);
std::vector<Point2> generate_customer_positions(const GeneratorConfig& config, Rng& rng);

struct TimeWindow {
    double start_s = 0.0;
    double end_s = 0.0;
};

// Windows are centered uniformly inside the reachable band
// [t(nearest depot, i), horizon - t(i, farthest depot)] and span a whole
// number of hours: U{2..8} loose, U{1..4} tight, clamped back into the band.
// Throws std::runtime_error naming the customer when the band is empty.
std::vector<TimeWindow> generate_time_windows(const GeneratorConfig& config,
                                              const std::vector<Point2>& customers,
                                              const std::vector<Point2>& depots, Rng& rng);

// One drone per `customers_per_drone` customers (rounded up); start and end
// depots drawn uniformly, except that when there are at least as many drones
// as depots every depot hosts at least one start and one end (the first
// n_depots slots are a random permutation of the depots).
std::vector<Drone> assign_drones(const GeneratorConfig& config, const std::vector<int>& depot_ids,
                                 Rng& rng);

// Full pipeline: seed -> stations -> facilities -> customers -> waypoints ->
// node labeling (depots, customers, charging stations, waypoints) -> time
// windows -> drones. RNG draws happen in exactly that order.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace cddp
