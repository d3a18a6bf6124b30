#include "cddp/solution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cddp {

using nlohmann::json;

int Plan::trip_count() const {
    int n = 0;
    for (const auto& trips : trips_by_drone) n += static_cast<int>(trips.size());
    return n;
}

const char* to_string(ViolationClass cls) {
    switch (cls) {
        case ViolationClass::CustomerCoverage: return "customer_coverage";
        case ViolationClass::Handover: return "handover";
        case ViolationClass::Outage: return "outage";
        case ViolationClass::TripStructure: return "trip_structure";
        case ViolationClass::DepotChaining: return "depot_chaining";
        case ViolationClass::TimeWindow: return "time_window";
        case ViolationClass::Battery: return "battery";
        case ViolationClass::Horizon: return "horizon";
    }
    return "unknown";
}

std::vector<std::string> trip_structure_defects(const Trip& trip, const Instance& instance) {
    std::vector<std::string> defects;
    if (trip.nodes.size() < 2) {
        defects.push_back("trip has fewer than two nodes");
        return defects;
    }
    const int n = instance.flyable_count();
    for (int id : trip.nodes) {
        if (id < 0 || id >= n) {
            defects.push_back("node id " + std::to_string(id) + " out of range");
            return defects;
        }
    }
    if (instance.kind_of(trip.nodes.front()) != NodeKind::Depot)
        defects.push_back("trip does not start at a depot");
    if (instance.kind_of(trip.nodes.back()) != NodeKind::Depot)
        defects.push_back("trip does not end at a depot");
    int customer_visits = 0;
    for (std::size_t k = 1; k + 1 < trip.nodes.size(); ++k) {
        const NodeKind kind = instance.kind_of(trip.nodes[k]);
        if (kind == NodeKind::Depot)
            defects.push_back("interior node " + std::to_string(trip.nodes[k]) + " is a depot");
        if (kind == NodeKind::Customer) ++customer_visits;
    }
    if (customer_visits > 1)
        defects.push_back("trip visits " + std::to_string(customer_visits) + " customers");
    return defects;
}

TripStats evaluate_trip(const Trip& trip, const Instance& instance, const MetricMatrix& metrics) {
    const std::vector<std::string> defects = trip_structure_defects(trip, instance);
    if (!defects.empty()) throw std::invalid_argument("evaluate_trip: " + defects.front());
    TripStats stats;
    for (std::size_t k = 1; k < trip.nodes.size(); ++k) {
        const ArcMetrics& arc = metrics.at(trip.nodes[k - 1], trip.nodes[k]);
        stats.handovers += arc.handovers;
        stats.outage_s += arc.outage_duration_s;
        stats.distance_m += arc.distance_m;
    }
    return stats;
}

double objective(const Plan& plan, const MetricMatrix& metrics) {
    const int n = metrics.node_count();
    double total = 0.0;
    for (const auto& trips : plan.trips_by_drone) {
        for (const Trip& trip : trips) {
            for (std::size_t k = 1; k < trip.nodes.size(); ++k) {
                const int i = trip.nodes[k - 1], j = trip.nodes[k];
                if (i >= 0 && i < n && j >= 0 && j < n) total += metrics.at(i, j).distance_m;
            }
        }
    }
    return total;
}

Schedule simulate_schedule(const Plan& plan, const Instance& instance, const MetricMatrix& metrics,
                           BatteryModel battery_model) {
    Schedule schedule;
    schedule.by_drone.resize(plan.trips_by_drone.size());

    auto in_range = [&](int id) { return id >= 0 && id < instance.flyable_count(); };

    for (std::size_t u = 0; u < plan.trips_by_drone.size(); ++u) {
        double clock = 0.0;    // arrival time of the previous trip, i.e. earliest next leave
        double battery = 1.0;  // charge carried into the next departure
        for (const Trip& trip : plan.trips_by_drone[u]) {
            TripSchedule ts;
            ts.leave_s = clock;
            // Trips referencing unknown nodes cannot be simulated; the
            // feasibility checker reports them as structural violations.
            const bool simulatable =
                !trip.nodes.empty() &&
                std::all_of(trip.nodes.begin(), trip.nodes.end(), in_range);
            if (!simulatable) {
                schedule.by_drone[u].push_back(std::move(ts));
                continue;
            }

            // Service at the trip's first depot: load (and swap, under the
            // reset model) before departure. A pure repositioning hop to
            // another depot skips the loading entirely.
            const bool repositioning =
                trip.nodes.size() >= 2 && instance.kind_of(trip.nodes[1]) == NodeKind::Depot;
            NodeEvent start;
            start.node_id = trip.nodes.front();
            start.arrival_s = ts.leave_s;
            start.departure_s =
                ts.leave_s +
                (repositioning ? 0.0 : instance.op_times.of(instance.kind_of(start.node_id)));
            start.battery_on_arrival = battery;
            if (battery_model == BatteryModel::ResetAtDepot) battery = 1.0;
            ts.events.push_back(start);

            for (std::size_t k = 1; k < trip.nodes.size(); ++k) {
                const int prev = trip.nodes[k - 1];
                const int cur = trip.nodes[k];
                const ArcMetrics& arc = metrics.at(prev, cur);

                NodeEvent ev;
                ev.node_id = cur;
                ev.arrival_s = ts.events.back().departure_s + arc.travel_time_s;
                battery -= arc.battery_cost;
                ev.battery_on_arrival = battery;

                const NodeKind kind = instance.kind_of(cur);
                if (k + 1 == trip.nodes.size()) {
                    // Trip ends on arrival; the next trip pays this depot's
                    // operation time itself.
                    ev.departure_s = ev.arrival_s;
                } else if (kind == NodeKind::Customer) {
                    const int ci = instance.customer_index(cur);
                    const Customer& c = instance.customers[static_cast<std::size_t>(ci)];
                    // Hover until the window opens, then serve.
                    ev.departure_s = std::max(ev.arrival_s, c.window_start_s) + c.service_time_s;
                } else {
                    ev.departure_s = ev.arrival_s + instance.op_times.of(kind);
                }
                if (kind == NodeKind::ChargingStation) battery = 1.0;  // swap
                ts.events.push_back(ev);
            }
            clock = ts.events.back().arrival_s;
            schedule.by_drone[u].push_back(std::move(ts));
        }
    }
    return schedule;
}

EvalResult check_feasibility(const Plan& plan, const Instance& instance,
                             const MetricMatrix& metrics, BatteryModel battery_model) {
    EvalResult result;
    auto violate = [&result](ViolationClass cls, double magnitude, std::string location) {
        result.violations.push_back({cls, magnitude, std::move(location)});
    };

    // (a) every customer served exactly once across the plan
    std::map<int, int> visits;
    for (const Customer& c : instance.customers) visits[c.node_id] = 0;
    for (const auto& trips : plan.trips_by_drone) {
        for (const Trip& trip : trips) {
            for (std::size_t k = 1; k + 1 < trip.nodes.size(); ++k) {
                if (instance.customer_index(trip.nodes[k]) >= 0) ++visits[trip.nodes[k]];
            }
        }
    }
    for (const auto& [node_id, count] : visits) {
        if (count != 1)
            violate(ViolationClass::CustomerCoverage, std::abs(count - 1.0),
                    "customer " + std::to_string(node_id) +
                        (count == 0 ? " unserved" : " served " + std::to_string(count) + " times"));
    }

    // Per-trip structure and communication-quality limits. Stats are summed
    // tolerantly so broken trips still rank.
    result.trip_stats.resize(plan.trips_by_drone.size());
    for (std::size_t u = 0; u < plan.trips_by_drone.size(); ++u) {
        for (std::size_t k = 0; k < plan.trips_by_drone[u].size(); ++k) {
            const Trip& trip = plan.trips_by_drone[u][k];
            const std::string where = "drone " + std::to_string(u) + " trip " + std::to_string(k);

            for (const std::string& defect : trip_structure_defects(trip, instance))
                violate(ViolationClass::TripStructure, 1.0, where + ": " + defect);

            TripStats stats;
            for (std::size_t a = 1; a < trip.nodes.size(); ++a) {
                const int from = trip.nodes[a - 1], to = trip.nodes[a];
                if (from < 0 || from >= instance.flyable_count() || to < 0 ||
                    to >= instance.flyable_count())
                    continue;
                const ArcMetrics& arc = metrics.at(from, to);
                stats.handovers += arc.handovers;
                stats.outage_s += arc.outage_duration_s;
                stats.distance_m += arc.distance_m;
            }
            result.trip_stats[u].push_back(stats);
            result.total_distance_m += stats.distance_m;

            // (b) inclusive thresholds: being exactly at the limit is fine
            if (stats.handovers > instance.thresholds.h_max)
                violate(ViolationClass::Handover, stats.handovers - instance.thresholds.h_max,
                        where);
            if (stats.outage_s > instance.thresholds.o_max_s)
                violate(ViolationClass::Outage, stats.outage_s - instance.thresholds.o_max_s,
                        where);
        }
    }

    // (d) workday endpoints and depot chaining
    for (std::size_t u = 0; u < plan.trips_by_drone.size() && u < instance.drones.size(); ++u) {
        const Drone& drone = instance.drones[u];
        const auto& trips = plan.trips_by_drone[u];
        const std::string who = "drone " + std::to_string(u);
        if (trips.empty()) {
            if (drone.start_depot != drone.end_depot)
                violate(ViolationClass::DepotChaining, 1.0,
                        who + " has no trips but distinct start/end depots");
            continue;
        }
        auto first_node = [&](const Trip& t) { return t.nodes.empty() ? -1 : t.nodes.front(); };
        auto last_node = [&](const Trip& t) { return t.nodes.empty() ? -1 : t.nodes.back(); };
        if (first_node(trips.front()) != drone.start_depot)
            violate(ViolationClass::DepotChaining, 1.0, who + " does not start at its start depot");
        if (last_node(trips.back()) != drone.end_depot)
            violate(ViolationClass::DepotChaining, 1.0, who + " does not end at its end depot");
        for (std::size_t k = 1; k < trips.size(); ++k) {
            if (last_node(trips[k - 1]) != first_node(trips[k]))
                violate(ViolationClass::DepotChaining, 1.0,
                        who + " trip " + std::to_string(k) + " does not chain from trip " +
                            std::to_string(k - 1));
        }
    }
    if (plan.trips_by_drone.size() != instance.drones.size())
        violate(ViolationClass::DepotChaining,
                std::abs(static_cast<double>(plan.trips_by_drone.size()) -
                         static_cast<double>(instance.drones.size())),
                "plan covers " + std::to_string(plan.trips_by_drone.size()) + " drones, instance has " +
                    std::to_string(instance.drones.size()));

    // (e)–(g) schedule-dependent checks
    const Schedule schedule = simulate_schedule(plan, instance, metrics, battery_model);
    for (std::size_t u = 0; u < schedule.by_drone.size(); ++u) {
        double last_arrival = 0.0;
        for (std::size_t k = 0; k < schedule.by_drone[u].size(); ++k) {
            const TripSchedule& ts = schedule.by_drone[u][k];
            const std::string where = "drone " + std::to_string(u) + " trip " + std::to_string(k);
            for (const NodeEvent& ev : ts.events) {
                const int ci = instance.customer_index(ev.node_id);
                const bool interior = &ev != &ts.events.front() && &ev != &ts.events.back();
                if (ci >= 0 && interior) {
                    const Customer& c = instance.customers[static_cast<std::size_t>(ci)];
                    if (ev.arrival_s > c.window_end_s)
                        violate(ViolationClass::TimeWindow, ev.arrival_s - c.window_end_s,
                                where + ": customer " + std::to_string(ev.node_id) + " visited late");
                }
                if (ev.battery_on_arrival < 0.0)
                    violate(ViolationClass::Battery, -ev.battery_on_arrival,
                            where + ": battery empty before node " + std::to_string(ev.node_id));
            }
            if (!ts.events.empty()) last_arrival = ts.events.back().arrival_s;
        }
        if (last_arrival > instance.horizon_s)
            violate(ViolationClass::Horizon, last_arrival - instance.horizon_s,
                    "drone " + std::to_string(u) + " finishes after the horizon");
    }

    return result;
}

std::string plan_to_json(const Plan& plan, int indent) {
    json drones = json::array();
    for (std::size_t u = 0; u < plan.trips_by_drone.size(); ++u) {
        json trips = json::array();
        for (const Trip& trip : plan.trips_by_drone[u]) trips.push_back(trip.nodes);
        drones.push_back({{"id", static_cast<int>(u)}, {"trips", std::move(trips)}});
    }
    json j;
    j["version"] = 1;
    j["drones"] = std::move(drones);
    return j.dump(indent) + "\n";
}

Plan plan_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("plan json: ") + e.what());
    }
    if (!j.contains("drones") || !j["drones"].is_array())
        throw std::invalid_argument("plan json: missing 'drones' array");
    Plan plan;
    plan.trips_by_drone.resize(j["drones"].size());
    for (const json& d : j["drones"]) {
        if (!d.contains("id") || !d.contains("trips"))
            throw std::invalid_argument("plan json: drone entry needs 'id' and 'trips'");
        const int id = d["id"].get<int>();
        if (id < 0 || id >= static_cast<int>(plan.trips_by_drone.size()))
            throw std::invalid_argument("plan json: drone id " + std::to_string(id) +
                                        " out of range");
        for (const json& t : d["trips"]) {
            Trip trip;
            trip.nodes = t.get<std::vector<int>>();
            plan.trips_by_drone[static_cast<std::size_t>(id)].push_back(std::move(trip));
        }
    }
    return plan;
}

void save_plan(const Plan& plan, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << plan_to_json(plan);
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return plan_from_json(buffer.str());
}

std::string eval_result_to_json(const EvalResult& result, int indent) {
    json trips = json::array();
    for (std::size_t u = 0; u < result.trip_stats.size(); ++u) {
        for (std::size_t k = 0; k < result.trip_stats[u].size(); ++k) {
            const TripStats& s = result.trip_stats[u][k];
            trips.push_back({{"drone", static_cast<int>(u)},
                             {"trip", static_cast<int>(k)},
                             {"handovers", s.handovers},
                             {"outage_s", s.outage_s},
                             {"distance_m", s.distance_m}});
        }
    }
    json violations = json::array();
    for (const Violation& v : result.violations) {
        violations.push_back({{"class", to_string(v.cls)},
                              {"magnitude", v.magnitude},
                              {"location", v.location}});
    }
    json j;
    j["feasible"] = result.feasible();
    j["total_distance_m"] = result.total_distance_m;
    j["trips"] = std::move(trips);
    j["violations"] = std::move(violations);
    return j.dump(indent) + "\n";
}

}  // namespace cddp
