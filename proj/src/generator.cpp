#include "cddp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cddp/voronoi.hpp"

namespace cddp {

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Fisher-Yates with our pinned RNG so the permutation is reproducible.
void shuffle_ids(std::vector<int>& ids, Rng& rng) {
    for (std::size_t i = ids.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1));
        std::swap(ids[i - 1], ids[j]);
    }
}

}  // namespace

int GeneratorConfig::effective_hotpoints() const {
    if (hotpoint_count > 0) return hotpoint_count;
    return std::max(2, n_customers / 10);
}

void GeneratorConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("generator: " + msg); };
    if (setting.size() != 3 || (setting[0] != 'U' && setting[0] != 'P') ||
        (setting[1] != 'U' && setting[1] != 'P') || (setting[2] != 'L' && setting[2] != 'T'))
        fail("setting '" + setting + "' is not a {U,P}{U,P}{L,T} code");
    if (n_customers < 1) fail("n_customers must be at least 1");
    if (!(region.width_m > 0.0) || !(region.height_m > 0.0)) fail("region must have positive extent");
    if (!(horizon_s > 0.0)) fail("horizon_s must be positive");
    if (!(hex_radius_m > 0.0)) fail("hex_radius_m must be positive");
    if (perturbation_m < 0.0) fail("perturbation_m must be non-negative");
    if (!(depot_spacing_m > 0.0) || !(cs_spacing_m > 0.0)) fail("facility spacings must be positive");
    if (hotpoint_count < 0) fail("hotpoint_count must be non-negative");
    if (cluster_sigma_m < 0.0) fail("cluster_sigma_m must be non-negative");
    if (customers_per_drone < 1) fail("customers_per_drone must be at least 1");
    comm_params.validate();
    metric_config.validate();
}

std::vector<Point2> hex_lattice_centers(const Rect& region, double radius) {
    const double row_step = 1.5 * radius;
    const double col_step = radius * std::sqrt(3.0);
    const double x_lo = -radius, x_hi = region.width_m + radius;
    const double y_lo = -radius, y_hi = region.height_m + radius;

    std::vector<Point2> centers;
    const int row_min = static_cast<int>(std::ceil(y_lo / row_step));
    const int row_max = static_cast<int>(std::floor(y_hi / row_step));
    for (int row = row_min; row <= row_max; ++row) {
        const double y = row * row_step;
        const double offset = (row % 2 != 0) ? col_step / 2.0 : 0.0;
        const int col_min = static_cast<int>(std::ceil((x_lo - offset) / col_step));
        const int col_max = static_cast<int>(std::floor((x_hi - offset) / col_step));
        for (int col = col_min; col <= col_max; ++col) {
            centers.push_back({col * col_step + offset, y});
        }
    }
    return centers;
}

std::vector<Point2> depot_lattice(const Rect& region, double spacing) {
    std::vector<Point2> points;
    const int nx = static_cast<int>(std::floor(region.width_m / spacing + 1e-9));
    const int ny = static_cast<int>(std::floor(region.height_m / spacing + 1e-9));
    for (int iy = 0; iy <= ny; ++iy) {
        for (int ix = 0; ix <= nx; ++ix) {
            points.push_back({ix * spacing, iy * spacing});
        }
    }
    return points;
}

std::vector<Point2> charging_station_lattice(const Rect& region, double depot_spacing,
                                             double cs_spacing) {
    const std::vector<Point2> depots = depot_lattice(region, depot_spacing);
    std::vector<Point2> stations;
    for (const Point2& p : depot_lattice(region, cs_spacing)) {
        bool on_depot = false;
        for (const Point2& d : depots) {
            if (distance(p, d) < 1e-9) {
                on_depot = true;
                break;
            }
        }
        if (!on_depot) stations.push_back(p);
    }
    return stations;
}

CommNetwork generate_comm_network(const GeneratorConfig& config, Rng& rng) {
    std::vector<Point2> centers = hex_lattice_centers(config.region, config.hex_radius_m);
    if (config.perturbed_network()) {
        // Displace each center uniformly within a disk; keep it inside the
        // same inflated zone the lattice enumeration uses, so a zero
        // perturbation reproduces the uniform grid exactly.
        const double r = config.hex_radius_m;
        for (Point2& c : centers) {
            double dx = 0.0, dy = 0.0;
            rng.disk(config.perturbation_m, dx, dy);
            c.x = clamp(c.x + dx, -r, config.region.width_m + r);
            c.y = clamp(c.y + dy, -r, config.region.height_m + r);
        }
    }
    std::vector<BaseStation> stations;
    stations.reserve(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        stations.push_back({static_cast<int>(i), centers[i], config.station_tx_power_dbm});
    }
    return CommNetwork(std::move(stations), config.comm_params);
}

std::vector<Point2> generate_customer_positions(const GeneratorConfig& config, Rng& rng) {
    std::vector<Point2> customers;
    customers.reserve(static_cast<std::size_t>(config.n_customers));
    if (!config.clustered_customers()) {
        for (int i = 0; i < config.n_customers; ++i) {
            const double x = rng.uniform(0.0, config.region.width_m);
            const double y = rng.uniform(0.0, config.region.height_m);
            customers.push_back({x, y});
        }
        return customers;
    }

    const int k = config.effective_hotpoints();
    std::vector<Point2> hotpoints;
    hotpoints.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double x = rng.uniform(0.0, config.region.width_m);
        const double y = rng.uniform(0.0, config.region.height_m);
        hotpoints.push_back({x, y});
    }
    // Each customer picks a hotpoint uniformly (the per-hotpoint counts are a
    // uniform multinomial split of n_customers) and scatters around it.
    for (int i = 0; i < config.n_customers; ++i) {
        const Point2& h = hotpoints[static_cast<std::size_t>(rng.uniform_int(0, k - 1))];
        const double x = h.x + rng.normal() * config.cluster_sigma_m;
        const double y = h.y + rng.normal() * config.cluster_sigma_m;
        customers.push_back({clamp(x, 0.0, config.region.width_m),
                             clamp(y, 0.0, config.region.height_m)});
    }
    return customers;
}

std::vector<TimeWindow> generate_time_windows(const GeneratorConfig& config,
                                              const std::vector<Point2>& customers,
                                              const std::vector<Point2>& depots, Rng& rng) {
    if (depots.empty()) throw std::invalid_argument("generate_time_windows: no depots");
    const double speed = config.metric_config.speed_mps;

    std::vector<TimeWindow> windows;
    windows.reserve(customers.size());
    for (std::size_t i = 0; i < customers.size(); ++i) {
        double t_nearest = std::numeric_limits<double>::infinity();
        double t_farthest = 0.0;
        for (const Point2& d : depots) {
            const double t = distance(customers[i], d) / speed;
            t_nearest = std::min(t_nearest, t);
            t_farthest = std::max(t_farthest, t);
        }
        const double lo = t_nearest;
        const double hi = config.horizon_s - t_farthest;
        if (lo > hi)
            throw std::runtime_error("customer " + std::to_string(i) +
                                     " cannot be reached within the horizon");

        const double center = rng.uniform(lo, hi);
        const int hours = config.tight_windows() ? rng.uniform_int(1, 4) : rng.uniform_int(2, 8);
        const double half = hours * 3600.0 / 2.0;
        TimeWindow w{center - half, center + half};
        // Keep the window inside the reachable band so a direct trip from the
        // nearest depot (and back to the farthest) always fits the horizon.
        w.start_s = std::max(w.start_s, lo);
        w.end_s = std::min(w.end_s, hi);
        windows.push_back(w);
    }
    return windows;
}

std::vector<Drone> assign_drones(const GeneratorConfig& config, const std::vector<int>& depot_ids,
                                 Rng& rng) {
    if (depot_ids.empty()) throw std::invalid_argument("assign_drones: no depots");
    const int n_drones =
        (config.n_customers + config.customers_per_drone - 1) / config.customers_per_drone;
    const int n_depots = static_cast<int>(depot_ids.size());

    auto draw_slots = [&](int count) {
        std::vector<int> slots;
        slots.reserve(static_cast<std::size_t>(count));
        if (count >= n_depots) {
            // Coverage guarantee: the first n_depots slots are a permutation,
            // so every depot hosts at least one drone.
            std::vector<int> perm = depot_ids;
            shuffle_ids(perm, rng);
            slots.insert(slots.end(), perm.begin(), perm.end());
        }
        while (static_cast<int>(slots.size()) < count) {
            slots.push_back(depot_ids[static_cast<std::size_t>(rng.uniform_int(0, n_depots - 1))]);
        }
        return slots;
    };
    const std::vector<int> starts = draw_slots(n_drones);
    const std::vector<int> ends = draw_slots(n_drones);

    std::vector<Drone> drones;
    drones.reserve(static_cast<std::size_t>(n_drones));
    for (int u = 0; u < n_drones; ++u) {
        drones.push_back({u, starts[static_cast<std::size_t>(u)], ends[static_cast<std::size_t>(u)]});
    }
    return drones;
}

Instance generate_instance(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);

    CommNetwork comm = generate_comm_network(config, rng);
    const std::vector<Point2> depots = depot_lattice(config.region, config.depot_spacing_m);
    const std::vector<Point2> charging =
        charging_station_lattice(config.region, config.depot_spacing_m, config.cs_spacing_m);
    const std::vector<Point2> customers = generate_customer_positions(config, rng);
    std::vector<Point2> station_sites;
    station_sites.reserve(comm.stations().size());
    for (const BaseStation& s : comm.stations()) station_sites.push_back(s.position);
    const std::vector<Point2> waypoints =
        voronoi_waypoints(station_sites, config.region);

    Instance instance;
    instance.version = 1;
    instance.region = config.region;
    instance.horizon_s = config.horizon_s;
    instance.comm = std::move(comm);
    instance.op_times = config.op_times;
    instance.thresholds = config.thresholds;
    instance.metric_config = config.metric_config;

    int next_id = 0;
    auto add_nodes = [&](const std::vector<Point2>& positions, NodeKind kind) {
        for (const Point2& p : positions) instance.nodes.push_back({next_id++, kind, p});
    };
    add_nodes(depots, NodeKind::Depot);
    add_nodes(customers, NodeKind::Customer);
    add_nodes(charging, NodeKind::ChargingStation);
    add_nodes(waypoints, NodeKind::Waypoint);

    const std::vector<TimeWindow> windows =
        generate_time_windows(config, customers, depots, rng);
    const int first_customer_id = static_cast<int>(depots.size());
    for (std::size_t i = 0; i < customers.size(); ++i) {
        instance.customers.push_back({first_customer_id + static_cast<int>(i),
                                      windows[i].start_s, windows[i].end_s,
                                      config.op_times.customer_s});
    }

    instance.drones = assign_drones(config, instance.depot_ids(), rng);
    instance.validate();
    return instance;
}

}  // namespace cddp
