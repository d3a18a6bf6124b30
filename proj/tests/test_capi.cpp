// Exercises the shared-library surface alone: only cddp.h plus a JSON
// parser for inspecting the replies. No core headers, no internal types.
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <cddp.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct Str {
    char* s = nullptr;
    ~Str() { cddp_string_free(s); }
    std::string view() const { return s == nullptr ? std::string() : std::string(s); }
};

struct Ins {
    cddp_instance* h = nullptr;
    ~Ins() { cddp_instance_free(h); }
};

struct Pl {
    cddp_plan* h = nullptr;
    ~Pl() { cddp_plan_free(h); }
};

// Small but nontrivial: four corner depots, two customers, a handful of
// stations and waypoints. Fast for both solvers.
constexpr const char* kTinyConfig = R"({
    "setting": "UUL", "customers": 2, "seed": 42,
    "region_width_m": 1500, "region_height_m": 1500,
    "hex_radius_m": 600, "depot_spacing_m": 1500, "cs_spacing_m": 1500
})";

// Arc variables of a plan reply, one per consecutive node pair.
std::string solution_lines_from_plan(const json& plan) {
    std::string out;
    for (const json& drone : plan.at("drones")) {
        const int u = drone.at("id").get<int>();
        const auto& trips = drone.at("trips");
        for (std::size_t k = 0; k < trips.size(); ++k) {
            const std::vector<int> nodes = trips[k].get<std::vector<int>>();
            for (std::size_t t = 0; t + 1 < nodes.size(); ++t)
                out += "x_" + std::to_string(nodes[t]) + "_" + std::to_string(nodes[t + 1]) +
                       "_" + std::to_string(u) + "_" + std::to_string(k) + " 1\n";
        }
    }
    return out;
}

}  // namespace

TEST_CASE("generation is deterministic and round-trips through json") {
    Ins a, b;
    REQUIRE(cddp_generate(kTinyConfig, &a.h) == CDDP_OK);
    REQUIRE(cddp_generate(kTinyConfig, &b.h) == CDDP_OK);
    CHECK(std::string(cddp_last_error()) == "");

    Str ja, jb, ha, hb;
    REQUIRE(cddp_instance_to_json(a.h, &ja.s) == CDDP_OK);
    REQUIRE(cddp_instance_to_json(b.h, &jb.s) == CDDP_OK);
    CHECK(ja.view() == jb.view());

    REQUIRE(cddp_instance_hash(a.h, &ha.s) == CDDP_OK);
    CHECK(ha.view().size() == 16);

    Ins reloaded;
    REQUIRE(cddp_instance_from_json(ja.s, &reloaded.h) == CDDP_OK);
    REQUIRE(cddp_instance_hash(reloaded.h, &hb.s) == CDDP_OK);
    CHECK(ha.view() == hb.view());

    Str summary;
    REQUIRE(cddp_instance_summary(a.h, &summary.s) == CDDP_OK);
    const json s = json::parse(summary.view());
    CHECK(s.at("customers").get<int>() == 2);
    CHECK(s.at("drones").get<int>() == 1);
    CHECK(s.at("nodes").get<int>() ==
          s.at("depots").get<int>() + s.at("customers").get<int>() +
              s.at("charging_stations").get<int>() + s.at("waypoints").get<int>());
    CHECK(s.at("hash").get<std::string>() == ha.view());
    CHECK(s.at("h_max").is_null());  // unlimited by default
}

TEST_CASE("failures return status codes and per-thread messages") {
    Ins out;
    CHECK(cddp_generate(R"({"setting":"XQ"})", &out.h) == CDDP_ERROR_ARGUMENT);
    CHECK(std::string(cddp_last_error()) != "");

    CHECK(cddp_generate(R"({"settng":"UUL"})", &out.h) == CDDP_ERROR_ARGUMENT);
    CHECK(std::string(cddp_last_error()).find("settng") != std::string::npos);

    CHECK(cddp_generate("{ not json", &out.h) == CDDP_ERROR_PARSE);
    CHECK(cddp_generate(nullptr, nullptr) == CDDP_ERROR_ARGUMENT);

    CHECK(cddp_instance_from_json("[1,2]", &out.h) != CDDP_OK);

    // The message belongs to the most recent call; success clears it.
    REQUIRE(cddp_generate(kTinyConfig, &out.h) == CDDP_OK);
    CHECK(std::string(cddp_last_error()) == "");

    // Null frees are no-ops.
    cddp_instance_free(nullptr);
    cddp_plan_free(nullptr);
    cddp_string_free(nullptr);
}

TEST_CASE("the ga and the exact solver agree through the c surface") {
    Ins ins;
    REQUIRE(cddp_generate(kTinyConfig, &ins.h) == CDDP_OK);

    Pl ga_plan;
    Str ga_report;
    REQUIRE(cddp_solve_ga(ins.h, R"({"population":30,"generations":20,"seed":1})", &ga_plan.h,
                          &ga_report.s) == CDDP_OK);
    const json ga = json::parse(ga_report.view());
    REQUIRE(ga.at("feasible").get<bool>());
    CHECK(ga.at("generations").get<int>() == 20);
    CHECK(ga.at("distance_m").get<double>() > 0.0);

    // An independent audit of the returned plan matches the report.
    Str audit;
    REQUIRE(cddp_evaluate(ins.h, ga_plan.h, CDDP_BATTERY_RESET, &audit.s) == CDDP_OK);
    const json eval = json::parse(audit.view());
    CHECK(eval.at("feasible").get<bool>());
    CHECK(eval.at("total_distance_m").get<double>() ==
          doctest::Approx(ga.at("distance_m").get<double>()).epsilon(1e-12));

    Pl exact_plan;
    Str exact_report;
    REQUIRE(cddp_solve_exact(ins.h, R"({"max_interior":2})", &exact_plan.h, &exact_report.s) ==
            CDDP_OK);
    const json exact = json::parse(exact_report.view());
    REQUIRE(exact.at("feasible").get<bool>());
    REQUIRE(exact_plan.h != nullptr);
    CHECK(exact.at("states_visited").get<long long>() > 0);
    // Optimal within bounds, so never above the heuristic.
    CHECK(exact.at("value").get<double>() <=
          ga.at("distance_m").get<double>() + 1e-9);

    CHECK(cddp_solve_ga(ins.h, R"({"population":1})", &ga_plan.h, &ga_report.s) ==
          CDDP_ERROR_ARGUMENT);
    CHECK(cddp_solve_exact(ins.h, R"({"objective":"nope"})", &exact_plan.h, &exact_report.s) ==
          CDDP_ERROR_ARGUMENT);
}

TEST_CASE("a tiny state budget surfaces as the dedicated status") {
    Ins ins;
    REQUIRE(cddp_generate(kTinyConfig, &ins.h) == CDDP_OK);
    Pl plan;
    Str report;
    CHECK(cddp_solve_exact(ins.h, R"({"state_budget":50})", &plan.h, &report.s) ==
          CDDP_ERROR_TOO_LARGE);
    CHECK(std::string(cddp_last_error()).find("states") != std::string::npos);
}

TEST_CASE("mps export and external-solution verification round-trip") {
    Ins ins;
    REQUIRE(cddp_generate(kTinyConfig, &ins.h) == CDDP_OK);

    Str mps;
    REQUIRE(cddp_export_mps(ins.h, CDDP_BATTERY_RESET, &mps.s) == CDDP_OK);
    CHECK(mps.view().rfind("NAME CDDP_", 0) == 0);
    CHECK(mps.view().find("ENDATA") != std::string::npos);

    Pl exact_plan;
    Str exact_report;
    REQUIRE(cddp_solve_exact(ins.h, R"({"max_interior":2})", &exact_plan.h, &exact_report.s) ==
            CDDP_OK);
    Str plan_json;
    REQUIRE(cddp_plan_to_json(exact_plan.h, &plan_json.s) == CDDP_OK);
    const json plan = json::parse(plan_json.view());

    const std::string lines = "# solver output\n" + solution_lines_from_plan(plan);
    Str verdict;
    REQUIRE(cddp_verify_solution_text(ins.h, lines.c_str(), 0.0, CDDP_BATTERY_RESET,
                                      &verdict.s) == CDDP_OK);
    const json v = json::parse(verdict.view());
    CHECK(v.at("feasible").get<bool>());
    CHECK(v.at("gap").get<double>() == 0.0);
    CHECK(v.at("plan") == plan);
    const double value = json::parse(exact_report.view()).at("value").get<double>();
    CHECK(v.at("distance_m").get<double>() == doctest::Approx(value).epsilon(1e-12));

    CHECK(cddp_verify_solution_text(ins.h, "x_0_1_0_0 one two\n", 0.0, CDDP_BATTERY_RESET,
                                    &verdict.s) == CDDP_ERROR_PARSE);
    CHECK(cddp_export_mps(ins.h, 7, &mps.s) == CDDP_ERROR_ARGUMENT);
}

TEST_CASE("threshold updates flow into evaluation") {
    Ins ins;
    REQUIRE(cddp_generate(kTinyConfig, &ins.h) == CDDP_OK);
    Pl plan;
    Str report;
    REQUIRE(cddp_solve_exact(ins.h, R"({"max_interior":2})", &plan.h, &report.s) == CDDP_OK);

    // Impossible limits make the same plan infeasible.
    REQUIRE(cddp_instance_set_thresholds(ins.h, 0.0, 0.0) == CDDP_OK);
    Str audit;
    REQUIRE(cddp_evaluate(ins.h, plan.h, CDDP_BATTERY_RESET, &audit.s) == CDDP_OK);
    const json tight = json::parse(audit.view());
    // Any flown arc crosses at least one cell border in this layout.
    CHECK_FALSE(tight.at("feasible").get<bool>());

    Str summary;
    REQUIRE(cddp_instance_summary(ins.h, &summary.s) == CDDP_OK);
    CHECK(json::parse(summary.view()).at("h_max").get<double>() == 0.0);

    REQUIRE(cddp_instance_set_thresholds(ins.h, INFINITY, INFINITY) == CDDP_OK);
    Str relaxed;
    REQUIRE(cddp_evaluate(ins.h, plan.h, CDDP_BATTERY_RESET, &relaxed.s) == CDDP_OK);
    CHECK(json::parse(relaxed.view()).at("feasible").get<bool>());

    CHECK(cddp_instance_set_thresholds(ins.h, -1.0, 0.0) == CDDP_ERROR_ARGUMENT);
}

TEST_CASE("svg rendering through the c surface") {
    Ins ins;
    REQUIRE(cddp_generate(kTinyConfig, &ins.h) == CDDP_OK);

    Str bare;
    REQUIRE(cddp_render_svg(ins.h, nullptr, 0.0, 0, &bare.s) == CDDP_OK);
    CHECK(bare.view().rfind("<svg", 0) == 0);

    Pl plan;
    Str report;
    REQUIRE(cddp_solve_exact(ins.h, R"({"max_interior":2})", &plan.h, &report.s) == CDDP_OK);
    Str map;
    REQUIRE(cddp_render_svg(ins.h, plan.h, 600.0, 50, &map.s) == CDDP_OK);
    CHECK(map.view().find("<polyline") != std::string::npos);
    CHECK(map.view().size() > bare.view().size());
}
