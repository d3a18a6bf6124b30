#include "cddp/instance.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cddp {

using nlohmann::json;

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Depot: return "depot";
        case NodeKind::Customer: return "customer";
        case NodeKind::ChargingStation: return "charging_station";
        case NodeKind::Waypoint: return "waypoint";
    }
    return "unknown";
}

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "depot") return NodeKind::Depot;
    if (s == "customer") return NodeKind::Customer;
    if (s == "charging_station") return NodeKind::ChargingStation;
    if (s == "waypoint") return NodeKind::Waypoint;
    throw std::invalid_argument("unknown node kind '" + s + "'");
}

double OpTimes::of(NodeKind kind) const {
    switch (kind) {
        case NodeKind::Depot: return depot_s;
        case NodeKind::Customer: return customer_s;
        case NodeKind::ChargingStation: return charging_station_s;
        case NodeKind::Waypoint: return waypoint_s;
    }
    return 0.0;
}

std::vector<int> Instance::depot_ids() const {
    std::vector<int> ids;
    for (const Node& node : nodes) {
        if (node.kind == NodeKind::Depot) ids.push_back(node.id);
    }
    return ids;
}

int Instance::customer_index(int node_id) const {
    for (std::size_t i = 0; i < customers.size(); ++i) {
        if (customers[i].node_id == node_id) return static_cast<int>(i);
    }
    return -1;
}

std::vector<Point2> Instance::node_positions() const {
    std::vector<Point2> positions;
    positions.reserve(nodes.size());
    for (const Node& node : nodes) positions.push_back(node.position);
    return positions;
}

MetricMatrix Instance::build_metrics() const {
    return build_metric_matrix(node_positions(), comm, metric_config);
}

void Instance::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("instance: " + msg); };

    if (version != 1) fail("unsupported version " + std::to_string(version));
    if (!(region.width_m > 0.0) || !(region.height_m > 0.0)) fail("region must have positive extent");
    if (!(horizon_s > 0.0)) fail("horizon_s must be positive");
    comm.validate();
    metric_config.validate();
    if (thresholds.h_max < 0.0) fail("thresholds.h_max must be non-negative");
    if (thresholds.o_max_s < 0.0) fail("thresholds.o_max_s must be non-negative");

    if (nodes.empty()) fail("node list is empty");
    // Ids must be their index, and kinds grouped depots, customers, charging
    // stations, waypoints so the id blocks are contiguous.
    static constexpr NodeKind kOrder[] = {NodeKind::Depot, NodeKind::Customer,
                                          NodeKind::ChargingStation, NodeKind::Waypoint};
    int phase = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& node = nodes[i];
        if (node.id != static_cast<int>(i))
            fail("node id " + std::to_string(node.id) + " at index " + std::to_string(i));
        while (phase < 4 && node.kind != kOrder[phase]) ++phase;
        if (phase == 4) fail("nodes are not grouped depot/customer/charging_station/waypoint");
        if (node.position.x < 0.0 || node.position.x > region.width_m ||
            node.position.y < 0.0 || node.position.y > region.height_m)
            fail("node " + std::to_string(node.id) + " lies outside the region");
    }
    if (depot_ids().empty()) fail("at least one depot is required");

    std::vector<int> customer_nodes;
    for (const Node& node : nodes) {
        if (node.kind == NodeKind::Customer) customer_nodes.push_back(node.id);
    }
    if (customer_nodes.size() != customers.size())
        fail("customer record count does not match customer node count");
    for (std::size_t i = 0; i < customers.size(); ++i) {
        const Customer& c = customers[i];
        if (c.node_id != customer_nodes[i])
            fail("customer record " + std::to_string(i) + " is out of node-id order");
        if (c.window_start_s < 0.0 || c.window_end_s < c.window_start_s ||
            c.window_end_s > horizon_s)
            fail("customer " + std::to_string(c.node_id) + " has an invalid time window");
        if (c.service_time_s < 0.0)
            fail("customer " + std::to_string(c.node_id) + " has negative service time");
    }

    if (drones.empty()) fail("at least one drone is required");
    for (std::size_t i = 0; i < drones.size(); ++i) {
        const Drone& d = drones[i];
        if (d.id != static_cast<int>(i)) fail("drone id " + std::to_string(d.id) + " at index " + std::to_string(i));
        for (int depot : {d.start_depot, d.end_depot}) {
            if (depot < 0 || depot >= flyable_count() || kind_of(depot) != NodeKind::Depot)
                fail("drone " + std::to_string(d.id) + " references non-depot node " + std::to_string(depot));
        }
    }
    if (op_times.depot_s < 0.0 || op_times.customer_s < 0.0 ||
        op_times.charging_station_s < 0.0 || op_times.waypoint_s < 0.0)
        fail("op_times must be non-negative");
}

namespace {

// json::at with the key reported on failure, so bad files name the field.
const json& member(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("instance json: missing key '") + key + "'");
    return *it;
}

double number(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number()) throw std::invalid_argument(std::string("instance json: '") + key + "' is not a number");
    return v.get<double>();
}

int integer(const json& j, const char* key) {
    const json& v = member(j, key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("instance json: '") + key + "' is not an integer");
    return v.get<int>();
}

// Limits are stored as null when disabled, since JSON has no infinity.
json limit_to_json(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

double limit_from_json(const json& j, const char* key) {
    const json& v = member(j, key);
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw std::invalid_argument(std::string("instance json: '") + key + "' is not a number or null");
    return v.get<double>();
}

json comm_params_to_json(const CommParams& p) {
    json j;
    j["alpha1"] = p.alpha1;
    j["alpha2"] = p.alpha2;
    j["alpha3"] = p.alpha3;
    j["mu_los_db"] = p.mu_los_db;
    j["mu_nlos_db"] = p.mu_nlos_db;
    j["noise_power_dbm"] = p.noise_power_dbm;
    j["carrier_freq_hz"] = p.carrier_freq_hz;
    j["light_speed_mps"] = p.light_speed_mps;
    j["drone_altitude_m"] = p.drone_altitude_m;
    j["se_threshold"] = p.se_threshold;
    return j;
}

CommParams comm_params_from_json(const json& j) {
    CommParams p;
    p.alpha1 = number(j, "alpha1");
    p.alpha2 = number(j, "alpha2");
    p.alpha3 = number(j, "alpha3");
    p.mu_los_db = number(j, "mu_los_db");
    p.mu_nlos_db = number(j, "mu_nlos_db");
    p.noise_power_dbm = number(j, "noise_power_dbm");
    p.carrier_freq_hz = number(j, "carrier_freq_hz");
    p.light_speed_mps = number(j, "light_speed_mps");
    p.drone_altitude_m = number(j, "drone_altitude_m");
    p.se_threshold = number(j, "se_threshold");
    return p;
}

json instance_to_json_value(const Instance& instance) {
    json j;
    j["version"] = instance.version;
    j["region"] = {{"width_m", instance.region.width_m}, {"height_m", instance.region.height_m}};
    j["horizon_s"] = instance.horizon_s;

    json stations = json::array();
    for (const BaseStation& s : instance.comm.stations()) {
        stations.push_back({{"id", s.id},
                            {"x", s.position.x},
                            {"y", s.position.y},
                            {"tx_power_dbm", s.tx_power_dbm}});
    }
    j["comm"] = {{"params", comm_params_to_json(instance.comm.params())},
                 {"stations", std::move(stations)}};

    json nodes = json::array();
    for (const Node& node : instance.nodes) {
        nodes.push_back({{"id", node.id},
                         {"kind", to_string(node.kind)},
                         {"x", node.position.x},
                         {"y", node.position.y}});
    }
    j["nodes"] = std::move(nodes);

    json customers = json::array();
    for (const Customer& c : instance.customers) {
        customers.push_back({{"node_id", c.node_id},
                             {"window_start_s", c.window_start_s},
                             {"window_end_s", c.window_end_s},
                             {"service_time_s", c.service_time_s}});
    }
    j["customers"] = std::move(customers);

    json drones = json::array();
    for (const Drone& d : instance.drones) {
        drones.push_back({{"id", d.id}, {"start_depot", d.start_depot}, {"end_depot", d.end_depot}});
    }
    j["drones"] = std::move(drones);

    j["op_times"] = {{"depot_s", instance.op_times.depot_s},
                     {"customer_s", instance.op_times.customer_s},
                     {"charging_station_s", instance.op_times.charging_station_s},
                     {"waypoint_s", instance.op_times.waypoint_s}};
    j["thresholds"] = {{"h_max", limit_to_json(instance.thresholds.h_max)},
                       {"o_max_s", limit_to_json(instance.thresholds.o_max_s)}};
    j["metric_config"] = {{"r_segments", instance.metric_config.r_segments},
                          {"speed_mps", instance.metric_config.speed_mps},
                          {"battery_range_m", instance.metric_config.battery_range_m}};
    return j;
}

Instance instance_from_json_value(const json& j) {
    Instance instance;
    instance.version = integer(j, "version");

    const json& region = member(j, "region");
    instance.region.width_m = number(region, "width_m");
    instance.region.height_m = number(region, "height_m");
    instance.horizon_s = number(j, "horizon_s");

    const json& comm = member(j, "comm");
    CommParams params = comm_params_from_json(member(comm, "params"));
    std::vector<BaseStation> stations;
    for (const json& s : member(comm, "stations")) {
        BaseStation station;
        station.id = integer(s, "id");
        station.position = {number(s, "x"), number(s, "y")};
        station.tx_power_dbm = number(s, "tx_power_dbm");
        stations.push_back(station);
    }
    instance.comm = CommNetwork(std::move(stations), params);

    for (const json& n : member(j, "nodes")) {
        Node node;
        node.id = integer(n, "id");
        node.kind = node_kind_from_string(member(n, "kind").get<std::string>());
        node.position = {number(n, "x"), number(n, "y")};
        instance.nodes.push_back(node);
    }
    for (const json& c : member(j, "customers")) {
        Customer customer;
        customer.node_id = integer(c, "node_id");
        customer.window_start_s = number(c, "window_start_s");
        customer.window_end_s = number(c, "window_end_s");
        customer.service_time_s = number(c, "service_time_s");
        instance.customers.push_back(customer);
    }
    for (const json& d : member(j, "drones")) {
        Drone drone;
        drone.id = integer(d, "id");
        drone.start_depot = integer(d, "start_depot");
        drone.end_depot = integer(d, "end_depot");
        instance.drones.push_back(drone);
    }

    const json& op = member(j, "op_times");
    instance.op_times.depot_s = number(op, "depot_s");
    instance.op_times.customer_s = number(op, "customer_s");
    instance.op_times.charging_station_s = number(op, "charging_station_s");
    instance.op_times.waypoint_s = number(op, "waypoint_s");

    const json& thresholds = member(j, "thresholds");
    instance.thresholds.h_max = limit_from_json(thresholds, "h_max");
    instance.thresholds.o_max_s = limit_from_json(thresholds, "o_max_s");

    const json& metric = member(j, "metric_config");
    instance.metric_config.r_segments = integer(metric, "r_segments");
    instance.metric_config.speed_mps = number(metric, "speed_mps");
    instance.metric_config.battery_range_m = number(metric, "battery_range_m");
    return instance;
}

}  // namespace

std::string instance_to_json(const Instance& instance, int indent) {
    return instance_to_json_value(instance).dump(indent) + "\n";
}

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("instance json: ") + e.what());
    }
    Instance instance = instance_from_json_value(j);
    instance.validate();
    return instance;
}

void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << instance_to_json(instance);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

std::string instance_hash(const Instance& instance) {
    // FNV-1a over the compact canonical JSON; keys are emitted sorted, so the
    // hash is stable across save/load cycles.
    const std::string text = instance_to_json_value(instance).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

bool instances_equal(const Instance& a, const Instance& b) {
    return instance_to_json_value(a) == instance_to_json_value(b);
}

}  // namespace cddp
