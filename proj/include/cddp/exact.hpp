#pragma once

// Exhaustive search for provably optimal plans on small instances. The
// search walks every chained-trip plan inside the configured bounds,
// simulates it arc by arc with the same rules as the feasibility checker,
// and keeps the best feasible one. Intended as a ground-truth oracle for
// validating the heuristic solver, not as a production solver.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cddp/arc_metrics.hpp"
#include "cddp/instance.hpp"
#include "cddp/solution.hpp"

namespace cddp {

enum class ObjectiveKind {
    TotalDistance,   // sum of flown meters over all trips
    MinmaxHandover,  // largest per-trip handover count
    MinmaxOutage,    // largest per-trip expected outage, seconds
};

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& text);

// Search-space limits. The enumeration considers plans where every trip
// visits at most `max_interior` distinct non-depot nodes, every drone flies
// at most `max_trips` trips (0 resolves to max(customer count, 1)), and all
// nodes are drawn from `node_whitelist` when it is non-empty (each drone's
// own start/end depots are always allowed). Optimality claims hold within
// these bounds only.
struct EnumerationBounds {
    int max_interior = 3;
    int max_trips = 0;
    std::vector<int> node_whitelist;
    std::uint64_t state_budget = 200'000'000;  // search states before giving up

    void validate(const Instance& instance) const;
};

// Thrown when the bounded search space still exceeds the state budget.
class SearchTooLarge : public std::runtime_error {
public:
    explicit SearchTooLarge(std::uint64_t states)
        : std::runtime_error("search too large: " + std::to_string(states) +
                             " states visited without exhausting the space"),
          states_visited(states) {}

    std::uint64_t states_visited;
};

struct ExactResult {
    bool feasible = false;  // a feasible plan exists within the bounds
    Plan best_plan;
    EvalResult best_eval;
    double best_value = 0.0;  // objective value of best_plan (meaningful when feasible)
    std::uint64_t states_visited = 0;
};

// Depth-first enumeration with incumbent pruning. Infeasible prefixes
// (battery, window, horizon, per-trip thresholds) are cut immediately;
// partial objective sums prune against the incumbent. Every improving leaf
// is re-audited with check_feasibility before being accepted, so the result
// is exactly as strict as the checker. Throws SearchTooLarge past the state
// budget and std::invalid_argument for broken bounds.
ExactResult enumerate_optimal(const Instance& instance, const MetricMatrix& metrics,
                              const EnumerationBounds& bounds = {},
                              ObjectiveKind objective = ObjectiveKind::TotalDistance,
                              BatteryModel battery_model = BatteryModel::ResetAtDepot);

// Every feasible plan within the bounds, for property tests on tiny
// instances. Plans arrive in deterministic search order. Throws
// SearchTooLarge when the space (or the result list) exceeds the budget.
std::vector<Plan> enumerate_feasible(const Instance& instance, const MetricMatrix& metrics,
                                     const EnumerationBounds& bounds = {},
                                     BatteryModel battery_model = BatteryModel::ResetAtDepot,
                                     std::size_t max_plans = 1000000);

}  // namespace cddp
