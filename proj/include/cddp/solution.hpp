#pragma once

#include <string>
#include <vector>

#include "cddp/arc_metrics.hpp"
#include "cddp/instance.hpp"

namespace cddp {

// One sortie: starts at a depot, ends at a depot, visits at most one customer
// in between; other interior stops are charging stations or waypoints.
struct Trip {
    std::vector<int> nodes;
};

// Per-drone ordered trip lists. Consecutive trips chain through the same
// depot; the first trip leaves the drone's start depot and the last one ends
// at its end depot.
struct Plan {
    std::vector<std::vector<Trip>> trips_by_drone;

    int drone_count() const { return static_cast<int>(trips_by_drone.size()); }
    int trip_count() const;
};

enum class ViolationClass {
    CustomerCoverage,
    Handover,
    Outage,
    TripStructure,
    DepotChaining,
    TimeWindow,
    Battery,
    Horizon,
};

const char* to_string(ViolationClass cls);

// Magnitudes are seconds for time-window/outage/horizon, counts for
// handover/coverage/structure, and charge fraction for battery — the GA
// penalty normalizes them per class.
struct Violation {
    ViolationClass cls;
    double magnitude = 0.0;
    std::string location;
};

// Whether a battery swap happens at every trip-start depot (the prose
// reading) or charge carries across trips and only charging stations swap
// (the constraint-system reading). Evaluation takes it as a parameter; it is
// not part of the instance.
enum class BatteryModel { ResetAtDepot, CarryAcrossTrips };

struct NodeEvent {
    int node_id = 0;
    double arrival_s = 0.0;
    double departure_s = 0.0;
    double battery_on_arrival = 1.0;
};

struct TripSchedule {
    double leave_s = 0.0;  // service start at the trip's first depot
    std::vector<NodeEvent> events;
};

struct Schedule {
    std::vector<std::vector<TripSchedule>> by_drone;
};

struct TripStats {
    int handovers = 0;
    double outage_s = 0.0;
    double distance_m = 0.0;
};

struct EvalResult {
    double total_distance_m = 0.0;
    std::vector<std::vector<TripStats>> trip_stats;  // aligned with the plan
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
};

// Componentwise sum of arc metrics over the trip. Throws
// std::invalid_argument when the trip breaks the structural invariants.
TripStats evaluate_trip(const Trip& trip, const Instance& instance, const MetricMatrix& metrics);

// Structural defects of a single trip (empty when well-formed).
std::vector<std::string> trip_structure_defects(const Trip& trip, const Instance& instance);

// Earliest-start simulation. Every drone starts its day at time zero; a trip
// departs its start depot after the depot operation time, waits at customers
// until their window opens, and the next trip may leave as soon as the
// previous one arrives. Infeasibilities (negative battery, late visits) are
// recorded in the schedule, never thrown.
Schedule simulate_schedule(const Plan& plan, const Instance& instance, const MetricMatrix& metrics,
                           BatteryModel battery_model = BatteryModel::ResetAtDepot);

// Full constraint audit: customer coverage, per-trip handover/outage limits,
// trip structure, depot chaining, time windows, battery, horizon.
EvalResult check_feasibility(const Plan& plan, const Instance& instance,
                             const MetricMatrix& metrics,
                             BatteryModel battery_model = BatteryModel::ResetAtDepot);

// Total flight distance in meters, tolerant of structural defects (it sums
// whatever arcs exist, so the GA can rank broken candidates too).
double objective(const Plan& plan, const MetricMatrix& metrics);

// Plan / evaluation JSON.
std::string plan_to_json(const Plan& plan, int indent = 2);
Plan plan_from_json(const std::string& text);
void save_plan(const Plan& plan, const std::string& path);
Plan load_plan(const std::string& path);
std::string eval_result_to_json(const EvalResult& result, int indent = 2);

}  // namespace cddp
