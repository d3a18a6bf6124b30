#pragma once

// MIP export of an instance in free-MPS form, plus the glue for checking an
// external solver's answer against the simulator: map a plan to a full
// variable assignment, parse `name value` solution files, and rebuild a plan
// from solved arc variables.
//
// Variable naming:
//   x_<i>_<j>_<u>_<k>   binary, drone u flies arc (i,j) on its trip k
//   p_<u>_<k>           binary, drone u operates a trip k
//   y_<i>_<u>_<k>       battery level in [0,1] at node i on trip k
//   sL_<i>_<u>_<k>      leave time at depot i, trip k (seconds)
//   sA_<i>_<u>_<k>      arrival time at depot i, trip k
//   sV_<i>_<u>_<k>      service-start time at non-depot i, trip k
//
// The trip index k always runs over 0..n_C-1 for every drone. Two exports of
// the same instance are byte-identical. Numbers are written with 12
// significant digits and no exponent notation.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cddp/arc_metrics.hpp"
#include "cddp/instance.hpp"
#include "cddp/solution.hpp"

namespace cddp {

struct MpsConfig {
    // Which battery bookkeeping the model encodes. The reset model leaves
    // each trip's start-depot charge as a free variable capped at 1 (the
    // solver maxing it out reproduces a fresh swap); the carry model adds
    // linking rows so the charge persists through shared depots, plus a row
    // pinning the first departure to a full battery.
    BatteryModel battery_model = BatteryModel::ResetAtDepot;
    std::size_t max_columns = 2'000'000;
};

// Render the full model. Throws std::runtime_error when the column count
// would exceed config.max_columns.
std::string export_mps(const Instance& instance, const MetricMatrix& metrics,
                       const MpsConfig& config = {});

// Big-M used by the scheduling rows of the export (the battery rows use
// their own constant): horizon + largest operation/service time + slowest
// arc.
double mps_big_m(const Instance& instance, const MetricMatrix& metrics);

// A complete assignment for every exported column, in column order. The
// plan must satisfy the model's structural assumptions: at most n_C trips
// per drone, no trip that starts and ends at the same depot, and no node
// revisited within one trip (one y/time variable exists per node and trip,
// so a repeat would need two values). Violations throw std::runtime_error.
// Unvisited slots get battery 1 and time 0, which the big-M rows ignore.
std::vector<std::pair<std::string, double>> assignment_from_plan(
    const Instance& instance, const MetricMatrix& metrics, const Plan& plan,
    BatteryModel battery_model = BatteryModel::ResetAtDepot);

// `name value` per line; blank lines and lines starting with '#' skipped.
std::string solution_file_text(const std::vector<std::pair<std::string, double>>& assignment);
std::map<std::string, double> parse_solution_text(const std::string& text);
std::map<std::string, double> parse_solution_file(const std::string& path);

struct SolutionVerification {
    Plan plan;            // rebuilt from the x variables
    EvalResult eval;      // simulator's audit of that plan
    double distance_m = 0.0;
    double gap = 0.0;     // (distance - bound) / bound, when bound > 0
};

// Rebuild the plan encoded by x-variable values (> 0.5 counts as flown) and
// audit it. Arc sets that do not chain into trips throw std::runtime_error.
SolutionVerification verify_solution_values(const Instance& instance, const MetricMatrix& metrics,
                                            const std::map<std::string, double>& values,
                                            double bound = 0.0,
                                            BatteryModel battery_model = BatteryModel::ResetAtDepot);

}  // namespace cddp
