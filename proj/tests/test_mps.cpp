#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "cddp/exact.hpp"
#include "cddp/mps.hpp"
#include "helpers.hpp"
#include "mps_reader.hpp"

using namespace cddp;

namespace {

// Smallest interesting model: two depots, one customer, one charging
// station, a single drone crossing between the depots.
Instance four_node_instance() {
    Instance ins;
    ins.region = {1000.0, 1000.0};
    ins.horizon_s = 28800.0;
    ins.comm = CommNetwork({{0, {500.0, 250.0}, 46.0}}, CommParams{});
    ins.nodes = {{0, NodeKind::Depot, {100.0, 100.0}},
                 {1, NodeKind::Depot, {900.0, 100.0}},
                 {2, NodeKind::Customer, {500.0, 400.0}},
                 {3, NodeKind::ChargingStation, {500.0, 100.0}}};
    ins.customers = {{2, 0.0, 28800.0, 60.0}};
    ins.drones = {{0, 0, 1}};
    ins.validate();
    return ins;
}

int count_rows_with_prefix(const testing::MpsModel& model, const std::string& prefix) {
    int n = 0;
    for (const std::string& name : model.row_order)
        if (name.rfind(prefix, 0) == 0) ++n;
    return n;
}

int count_cols_with_prefix(const testing::MpsModel& model, const std::string& prefix) {
    int n = 0;
    for (const std::string& name : model.column_order)
        if (name.rfind(prefix, 0) == 0) ++n;
    return n;
}

std::map<std::string, double> as_map(const std::vector<std::pair<std::string, double>>& kv) {
    return {kv.begin(), kv.end()};
}

}  // namespace

TEST_CASE("column census of the four-node model") {
    const Instance ins = four_node_instance();
    const MetricMatrix m = ins.build_metrics();
    const testing::MpsModel model = testing::parse_mps(export_mps(ins, m));

    CHECK(count_cols_with_prefix(model, "x_") == 12);  // 4*3 arcs, 1 drone, 1 trip
    CHECK(count_cols_with_prefix(model, "p_") == 1);
    CHECK(count_cols_with_prefix(model, "y_") == 4);
    CHECK(count_cols_with_prefix(model, "sL_") == 2);
    CHECK(count_cols_with_prefix(model, "sA_") == 2);
    CHECK(count_cols_with_prefix(model, "sV_") == 2);
    CHECK(model.column_order.size() == 23);

    CHECK(count_rows_with_prefix(model, "VISIT") == 1);
    CHECK(count_rows_with_prefix(model, "FLOW") == 2);
    CHECK(count_rows_with_prefix(model, "ARCP") == 12);
    CHECK(count_rows_with_prefix(model, "ONELEAVE") == 1);
    CHECK(count_rows_with_prefix(model, "BCSL") == 3);  // only arcs leaving the station
    CHECK(count_rows_with_prefix(model, "BATL") == 9);
    CHECK(count_rows_with_prefix(model, "HCAP") == 0);  // thresholds unlimited
    CHECK(count_rows_with_prefix(model, "TSTART") == 0);  // single trip slot

    // Binary and box bounds land in BOUNDS.
    CHECK(model.bounds.at("x_0_1_0_0").integral);
    CHECK(model.bounds.at("p_0_0").integral);
    CHECK(model.bounds.at("y_2_0_0").hi == 1.0);
    CHECK(model.bounds.find("sV_2_0_0") == model.bounds.end());
}

TEST_CASE("visit rows follow the customer count and caps follow thresholds") {
    Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    const testing::MpsModel plain = testing::parse_mps(export_mps(ins, m));
    CHECK(count_rows_with_prefix(plain, "VISIT") == 2);
    CHECK(count_rows_with_prefix(plain, "HCAP") == 0);
    CHECK(count_rows_with_prefix(plain, "OCAP") == 0);
    CHECK(count_rows_with_prefix(plain, "SEQ") == 1);     // two trip slots
    CHECK(count_rows_with_prefix(plain, "TSTART") == 2);  // two depots, one k pair

    ins.thresholds.h_max = 4.0;
    ins.thresholds.o_max_s = 60.0;
    const testing::MpsModel capped = testing::parse_mps(export_mps(ins, m));
    CHECK(count_rows_with_prefix(capped, "HCAP") == 2);  // one per drone and trip
    CHECK(count_rows_with_prefix(capped, "OCAP") == 2);
    CHECK(capped.rows.at("HCAP_0_0").rhs == 4.0);
    CHECK(capped.rows.at("OCAP_0_1").rhs == 60.0);
}

TEST_CASE("export is byte-deterministic") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    CHECK(export_mps(ins, m) == export_mps(ins, m));
}

TEST_CASE("numbers are written without exponent notation") {
    Instance ins = testing::mini_instance();
    // Tiny battery costs exercise the sub-1e-4 formatting path.
    ins.metric_config.battery_range_m = 9.0e6;
    const MetricMatrix m = ins.build_metrics();
    const std::string text = export_mps(ins, m);
    CHECK(text.find("e+") == std::string::npos);
    CHECK(text.find("e-") == std::string::npos);
    CHECK(text.find("E+") == std::string::npos);
    CHECK(text.find("E-") == std::string::npos);
}

TEST_CASE("scheduling rows carry the documented big-M") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    const double M = mps_big_m(ins, m);
    // horizon + depot loading (largest dwell) + the slowest arc.
    CHECK(M > ins.horizon_s);

    const testing::MpsModel model = testing::parse_mps(export_mps(ins, m));
    // Depot 0 -> customer 2, trip slot 0.
    const double expectation = M - ins.op_times.depot_s - m.at(0, 2).travel_time_s;
    CHECK(model.rows.at("TFIRST_0_2_0_0").rhs == doctest::Approx(expectation).epsilon(1e-9));
    // Depot-to-depot hops pay no dwell.
    CHECK(model.rows.at("TENDD_0_1_0_0").rhs ==
          doctest::Approx(M - m.at(0, 1).travel_time_s).epsilon(1e-9));
    CHECK(model.rows.at("TSTART_0_0_0").rhs == doctest::Approx(M).epsilon(1e-9));
}

TEST_CASE("oracle plan satisfies every exported row under both battery models") {
    // A round-trip drone: with one customer per trip, a start/end depot pair
    // that differs would force one same-depot loop trip into every optimal
    // plan, and loops have no arc representation.
    Instance ins = testing::mini_instance();
    ins.drones = {{0, 0, 0}};
    const MetricMatrix m = ins.build_metrics();
    const ExactResult oracle = enumerate_optimal(ins, m);
    REQUIRE(oracle.feasible);

    for (BatteryModel bm : {BatteryModel::ResetAtDepot, BatteryModel::CarryAcrossTrips}) {
        MpsConfig config;
        config.battery_model = bm;
        const testing::MpsModel model = testing::parse_mps(export_mps(ins, m, config));
        const auto values = as_map(assignment_from_plan(ins, m, oracle.best_plan, bm));

        const auto violations = model.violations(values, 1e-6);
        for (const std::string& v : violations) MESSAGE(v);
        CHECK(violations.empty());
        CHECK(model.objective(values) ==
              doctest::Approx(oracle.best_eval.total_distance_m).epsilon(1e-9));
    }
}

TEST_CASE("carry-mode linking rows appear only when asked for") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    const testing::MpsModel reset = testing::parse_mps(export_mps(ins, m));
    CHECK(count_rows_with_prefix(reset, "BLNK") == 0);
    CHECK(count_rows_with_prefix(reset, "BINIT") == 0);

    MpsConfig config;
    config.battery_model = BatteryModel::CarryAcrossTrips;
    const testing::MpsModel carry = testing::parse_mps(export_mps(ins, m, config));
    CHECK(count_rows_with_prefix(carry, "BLNKU") == 2);  // two depots, k=0 only
    CHECK(count_rows_with_prefix(carry, "BLNKL") == 2);
    CHECK(count_rows_with_prefix(carry, "BINIT") == 1);
}

TEST_CASE("a multi-trip plan with battery carry satisfies the carry export") {
    // Drain enough battery that carrying actually differs from resetting;
    // a round-trip drone gives a chained two-trip plan without loops.
    Instance ins = testing::mini_instance();
    ins.drones = {{0, 0, 0}};
    ins.metric_config.battery_range_m = 8000.0;
    const MetricMatrix m = ins.build_metrics();

    Plan plan;
    plan.trips_by_drone = {{{{0, 2, 1}}, {{1, 3, 0}}}};
    const EvalResult eval = check_feasibility(plan, ins, m, BatteryModel::CarryAcrossTrips);
    REQUIRE(eval.feasible());

    MpsConfig config;
    config.battery_model = BatteryModel::CarryAcrossTrips;
    const testing::MpsModel model = testing::parse_mps(export_mps(ins, m, config));
    const auto values =
        as_map(assignment_from_plan(ins, m, plan, BatteryModel::CarryAcrossTrips));
    const auto violations = model.violations(values, 1e-6);
    for (const std::string& v : violations) MESSAGE(v);
    CHECK(violations.empty());
}

TEST_CASE("carry linking pins the slot right after a drone's last trip") {
    // One trip per drone leaves trip slot 1 unused; the linking row between
    // slots still fires at the arrival depot and must see the parked charge,
    // not the full-pack default.
    Instance ins = testing::mini_instance();
    ins.drones = {{0, 0, 1}, {1, 1, 0}};
    ins.metric_config.battery_range_m = 8000.0;
    const MetricMatrix m = ins.build_metrics();

    Plan plan;
    plan.trips_by_drone = {{{{0, 2, 1}}}, {{{1, 3, 0}}}};
    REQUIRE(check_feasibility(plan, ins, m, BatteryModel::CarryAcrossTrips).feasible());

    MpsConfig config;
    config.battery_model = BatteryModel::CarryAcrossTrips;
    const testing::MpsModel model = testing::parse_mps(export_mps(ins, m, config));
    const auto values =
        as_map(assignment_from_plan(ins, m, plan, BatteryModel::CarryAcrossTrips));
    const auto violations = model.violations(values, 1e-6);
    for (const std::string& v : violations) MESSAGE(v);
    CHECK(violations.empty());
}

TEST_CASE("assignment rejects plans the variable scheme cannot express") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();

    Plan loop;  // same start and end depot on one trip
    loop.trips_by_drone = {{{{0, 2, 0}}, {{0, 3, 1}}}};
    CHECK_THROWS_WITH_AS(static_cast<void>(assignment_from_plan(ins, m, loop)),
                         doctest::Contains("same depot"), std::runtime_error);

    Plan revisit;
    revisit.trips_by_drone = {{{{0, 4, 2, 4, 1}}, {{1, 3, 1}}}};
    CHECK_THROWS_WITH_AS(static_cast<void>(assignment_from_plan(ins, m, revisit)),
                         doctest::Contains("revisits"), std::runtime_error);

    Plan crowded;  // more trips than slots
    crowded.trips_by_drone = {{{{0, 2, 1}}, {{1, 3, 0}}, {{0, 1}}}};
    CHECK_THROWS_WITH_AS(static_cast<void>(assignment_from_plan(ins, m, crowded)),
                         doctest::Contains("trip slots"), std::runtime_error);
}

TEST_CASE("solution files round-trip and feed verification") {
    Instance ins = testing::mini_instance();
    ins.drones = {{0, 0, 0}};  // loop-free optimum, see above
    const MetricMatrix m = ins.build_metrics();
    const ExactResult oracle = enumerate_optimal(ins, m);
    REQUIRE(oracle.feasible);
    const auto assignment = assignment_from_plan(ins, m, oracle.best_plan);

    const std::string path = "/tmp/cddp_test_solution.txt";
    {
        std::ofstream out(path);
        out << "# objective " << oracle.best_value << "\n\n";
        out << solution_file_text(assignment);
    }
    const auto values = parse_solution_file(path);
    CHECK(values.size() == assignment.size());

    const SolutionVerification identity = verify_solution_values(ins, m, values);
    CHECK(plan_to_json(identity.plan) == plan_to_json(oracle.best_plan));
    CHECK(identity.eval.feasible());
    CHECK(identity.distance_m == doctest::Approx(oracle.best_value).epsilon(1e-9));
    CHECK(identity.gap == 0.0);  // no bound given

    // The relative-gap arithmetic: distance d against bound d/1.1 gives 10%.
    const SolutionVerification gapped =
        verify_solution_values(ins, m, values, identity.distance_m / 1.1);
    CHECK(gapped.gap == doctest::Approx(0.1).epsilon(1e-9));

    std::remove(path.c_str());
}

TEST_CASE("verification flags an unserved customer") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    Plan partial;
    partial.trips_by_drone = {{{{0, 2, 1}}}};  // customer 3 missing
    const auto values = as_map(assignment_from_plan(ins, m, partial));
    const SolutionVerification report = verify_solution_values(ins, m, values);
    CHECK_FALSE(report.eval.feasible());
    bool coverage = false;
    for (const Violation& v : report.eval.violations)
        coverage = coverage || v.cls == ViolationClass::CustomerCoverage;
    CHECK(coverage);
}

TEST_CASE("bad solution files are rejected") {
    const std::string path = "/tmp/cddp_bad_solution.txt";
    {
        std::ofstream out(path);
        out << "x_0_1_0_0 1 stray\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(parse_solution_file(path)),
                         doctest::Contains("line 1"), std::runtime_error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(static_cast<void>(parse_solution_file("/tmp/does_not_exist_cddp.txt")),
                    std::runtime_error);
}

TEST_CASE("inconsistent arc sets are reported") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    std::map<std::string, double> values;
    values["x_0_2_0_0"] = 1.0;  // leaves depot 0 but never returns
    CHECK_THROWS_WITH_AS(static_cast<void>(verify_solution_values(ins, m, values)),
                         doctest::Contains("breaks"), std::runtime_error);

    values.clear();
    values["x_2_3_0_0"] = 1.0;  // no depot at all
    CHECK_THROWS_WITH_AS(static_cast<void>(verify_solution_values(ins, m, values)),
                         doctest::Contains("no depot"), std::runtime_error);
}

TEST_CASE("column guard rejects oversized exports") {
    const Instance ins = testing::mini_instance();
    const MetricMatrix m = ins.build_metrics();
    MpsConfig config;
    config.max_columns = 10;
    CHECK_THROWS_WITH_AS(static_cast<void>(export_mps(ins, m, config)),
                         doctest::Contains("columns"), std::runtime_error);
}
