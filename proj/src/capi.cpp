#include "cddp.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cddp/exact.hpp"
#include "cddp/ga.hpp"
#include "cddp/generator.hpp"
#include "cddp/instance.hpp"
#include "cddp/mps.hpp"
#include "cddp/solution.hpp"
#include "cddp/svg.hpp"

using nlohmann::json;

struct cddp_instance {
    cddp::Instance ins;
    std::unique_ptr<cddp::MetricMatrix> metrics;  // built on first use

    const cddp::MetricMatrix& metrics_ref() {
        if (!metrics) metrics = std::make_unique<cddp::MetricMatrix>(ins.build_metrics());
        return *metrics;
    }
};

struct cddp_plan {
    cddp::Plan plan;
};

namespace {

thread_local std::string g_last_error;

// Bad solution text is a parse problem, not an argument problem.
struct solution_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
cddp_status guarded(F&& body) {
    g_last_error.clear();
    try {
        return body();
    } catch (const json::exception& e) {
        g_last_error = e.what();
        return CDDP_ERROR_PARSE;
    } catch (const solution_parse_error& e) {
        g_last_error = e.what();
        return CDDP_ERROR_PARSE;
    } catch (const cddp::SearchTooLarge& e) {
        g_last_error = e.what();
        return CDDP_ERROR_TOO_LARGE;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CDDP_ERROR_ARGUMENT;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return CDDP_ERROR_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CDDP_ERROR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

json parse_object(const char* text, const char* what) {
    const json parsed = json::parse(text == nullptr || *text == '\0' ? "{}" : text);
    require(parsed.is_object(), (std::string(what) + " must be a JSON object").c_str());
    return parsed;
}

cddp::BatteryModel battery_from_int(int battery_model) {
    if (battery_model == CDDP_BATTERY_RESET) return cddp::BatteryModel::ResetAtDepot;
    if (battery_model == CDDP_BATTERY_CARRY) return cddp::BatteryModel::CarryAcrossTrips;
    throw std::invalid_argument("battery_model must be 0 (reset) or 1 (carry)");
}

cddp::BatteryModel battery_from_name(const std::string& name) {
    if (name == "reset") return cddp::BatteryModel::ResetAtDepot;
    if (name == "carry") return cddp::BatteryModel::CarryAcrossTrips;
    throw std::invalid_argument("battery must be \"reset\" or \"carry\", got \"" + name + "\"");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

extern "C" {

const char* cddp_last_error(void) { return g_last_error.c_str(); }

void cddp_string_free(char* s) { std::free(s); }
void cddp_instance_free(cddp_instance* instance) { delete instance; }
void cddp_plan_free(cddp_plan* plan) { delete plan; }

cddp_status cddp_generate(const char* config_json, cddp_instance** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        cddp::GeneratorConfig config;
        const json parsed = parse_object(config_json, "generator config");
        for (const auto& [key, value] : parsed.items()) {
            if (key == "setting") config.setting = value.get<std::string>();
            else if (key == "customers") config.n_customers = value.get<int>();
            else if (key == "seed") config.seed = value.get<std::uint64_t>();
            else if (key == "region_width_m") config.region.width_m = value.get<double>();
            else if (key == "region_height_m") config.region.height_m = value.get<double>();
            else if (key == "horizon_s") config.horizon_s = value.get<double>();
            else if (key == "hex_radius_m") config.hex_radius_m = value.get<double>();
            else if (key == "perturbation_m") config.perturbation_m = value.get<double>();
            else if (key == "depot_spacing_m") config.depot_spacing_m = value.get<double>();
            else if (key == "cs_spacing_m") config.cs_spacing_m = value.get<double>();
            else if (key == "hotpoints") config.hotpoint_count = value.get<int>();
            else if (key == "cluster_sigma_m") config.cluster_sigma_m = value.get<double>();
            else if (key == "customers_per_drone") config.customers_per_drone = value.get<int>();
            else if (key == "h_max") config.thresholds.h_max = value.get<double>();
            else if (key == "o_max_s") config.thresholds.o_max_s = value.get<double>();
            else if (key == "r_segments") config.metric_config.r_segments = value.get<int>();
            else if (key == "speed_mps") config.metric_config.speed_mps = value.get<double>();
            else if (key == "battery_range_m")
                config.metric_config.battery_range_m = value.get<double>();
            else
                throw std::invalid_argument("unknown generator config key \"" + key + "\"");
        }
        *out = new cddp_instance{cddp::generate_instance(config), nullptr};
        return CDDP_OK;
    });
}

cddp_status cddp_instance_from_json(const char* text, cddp_instance** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        require(text != nullptr, "json must not be null");
        *out = new cddp_instance{cddp::instance_from_json(text), nullptr};
        return CDDP_OK;
    });
}

cddp_status cddp_instance_to_json(const cddp_instance* instance, char** out_json) {
    return guarded([&] {
        require(instance != nullptr && out_json != nullptr, "null pointer argument");
        *out_json = copy_out(cddp::instance_to_json(instance->ins));
        return CDDP_OK;
    });
}

cddp_status cddp_instance_hash(const cddp_instance* instance, char** out_hash) {
    return guarded([&] {
        require(instance != nullptr && out_hash != nullptr, "null pointer argument");
        *out_hash = copy_out(cddp::instance_hash(instance->ins));
        return CDDP_OK;
    });
}

cddp_status cddp_instance_summary(const cddp_instance* instance, char** out_json) {
    return guarded([&] {
        require(instance != nullptr && out_json != nullptr, "null pointer argument");
        const cddp::Instance& ins = instance->ins;
        int depots = 0, charging = 0, waypoints = 0;
        for (const cddp::Node& node : ins.nodes) {
            if (node.kind == cddp::NodeKind::Depot) ++depots;
            else if (node.kind == cddp::NodeKind::ChargingStation) ++charging;
            else if (node.kind == cddp::NodeKind::Waypoint) ++waypoints;
        }
        json summary = {
            {"hash", cddp::instance_hash(ins)},
            {"nodes", ins.flyable_count()},
            {"depots", depots},
            {"customers", ins.customer_count()},
            {"charging_stations", charging},
            {"waypoints", waypoints},
            {"stations", ins.comm.station_count()},
            {"drones", ins.drone_count()},
            {"region", {ins.region.width_m, ins.region.height_m}},
            {"horizon_s", ins.horizon_s},
            {"h_max", std::isfinite(ins.thresholds.h_max) ? json(ins.thresholds.h_max) : json()},
            {"o_max_s",
             std::isfinite(ins.thresholds.o_max_s) ? json(ins.thresholds.o_max_s) : json()},
        };
        *out_json = copy_out(summary.dump(2));
        return CDDP_OK;
    });
}

cddp_status cddp_instance_set_thresholds(cddp_instance* instance, double h_max, double o_max_s) {
    return guarded([&] {
        require(instance != nullptr, "null pointer argument");
        require(!(h_max < 0.0) && !std::isnan(h_max), "h_max must be >= 0");
        require(!(o_max_s < 0.0) && !std::isnan(o_max_s), "o_max_s must be >= 0");
        instance->ins.thresholds.h_max = h_max;
        instance->ins.thresholds.o_max_s = o_max_s;
        return CDDP_OK;
    });
}

cddp_status cddp_plan_from_json(const char* text, cddp_plan** out) {
    return guarded([&] {
        require(out != nullptr, "out must not be null");
        require(text != nullptr, "json must not be null");
        *out = new cddp_plan{cddp::plan_from_json(text)};
        return CDDP_OK;
    });
}

cddp_status cddp_plan_to_json(const cddp_plan* plan, char** out_json) {
    return guarded([&] {
        require(plan != nullptr && out_json != nullptr, "null pointer argument");
        *out_json = copy_out(cddp::plan_to_json(plan->plan));
        return CDDP_OK;
    });
}

cddp_status cddp_evaluate(const cddp_instance* instance, const cddp_plan* plan,
                          int battery_model, char** out_report_json) {
    return guarded([&] {
        require(instance != nullptr && plan != nullptr && out_report_json != nullptr,
                "null pointer argument");
        const cddp::BatteryModel bm = battery_from_int(battery_model);
        auto* self = const_cast<cddp_instance*>(instance);
        const cddp::EvalResult eval =
            cddp::check_feasibility(plan->plan, instance->ins, self->metrics_ref(), bm);
        *out_report_json = copy_out(cddp::eval_result_to_json(eval));
        return CDDP_OK;
    });
}

cddp_status cddp_solve_ga(const cddp_instance* instance, const char* config_json,
                          cddp_plan** out_plan, char** out_report_json) {
    return guarded([&] {
        require(instance != nullptr && out_plan != nullptr && out_report_json != nullptr,
                "null pointer argument");
        cddp::GAConfig config;
        const json parsed = parse_object(config_json, "ga config");
        for (const auto& [key, value] : parsed.items()) {
            if (key == "population") config.population_size = value.get<int>();
            else if (key == "generations") config.max_generations = value.get<int>();
            else if (key == "time_limit_s") config.time_limit_s = value.get<double>();
            else if (key == "penalty_factor") config.penalty_factor = value.get<double>();
            else if (key == "crossover_prob") config.crossover_prob = value.get<double>();
            else if (key == "crossover_eta") config.crossover_eta = value.get<double>();
            else if (key == "mutation_prob") config.mutation_prob = value.get<double>();
            else if (key == "mutation_eta") config.mutation_eta = value.get<double>();
            else if (key == "seed") config.seed = value.get<std::uint64_t>();
            else if (key == "battery") config.battery_model =
                battery_from_name(value.get<std::string>());
            else if (key == "crossover") {
                const std::string kind = value.get<std::string>();
                if (kind == "sbx") config.crossover_kind = cddp::GAConfig::Crossover::Sbx;
                else if (kind == "one_point")
                    config.crossover_kind = cddp::GAConfig::Crossover::OnePoint;
                else
                    throw std::invalid_argument("crossover must be \"sbx\" or \"one_point\"");
            } else {
                throw std::invalid_argument("unknown ga config key \"" + key + "\"");
            }
        }
        config.validate();

        auto* self = const_cast<cddp_instance*>(instance);
        const cddp::GAResult result =
            cddp::run_ga(instance->ins, self->metrics_ref(), config);

        json report = {
            {"algorithm", "ga"},
            {"feasible", result.found_feasible},
            {"distance_m", result.best_eval.total_distance_m},
            {"fitness", result.best_fitness},
            {"generations", result.stats.generations},
            {"evaluations", result.stats.evaluations},
            {"wall_time_s", result.stats.wall_time_s},
            {"evaluation", json::parse(cddp::eval_result_to_json(result.best_eval))},
        };
        *out_plan = new cddp_plan{result.best_plan};
        *out_report_json = copy_out(report.dump(2));
        return CDDP_OK;
    });
}

cddp_status cddp_solve_exact(const cddp_instance* instance, const char* options_json,
                             cddp_plan** out_plan, char** out_report_json) {
    return guarded([&] {
        require(instance != nullptr && out_plan != nullptr && out_report_json != nullptr,
                "null pointer argument");
        cddp::EnumerationBounds bounds;
        cddp::ObjectiveKind objective = cddp::ObjectiveKind::TotalDistance;
        cddp::BatteryModel bm = cddp::BatteryModel::ResetAtDepot;
        const json parsed = parse_object(options_json, "exact options");
        for (const auto& [key, value] : parsed.items()) {
            if (key == "objective") objective =
                cddp::objective_kind_from_string(value.get<std::string>());
            else if (key == "max_interior") bounds.max_interior = value.get<int>();
            else if (key == "max_trips") bounds.max_trips = value.get<int>();
            else if (key == "state_budget") bounds.state_budget = value.get<long long>();
            else if (key == "whitelist") bounds.node_whitelist = value.get<std::vector<int>>();
            else if (key == "battery") bm = battery_from_name(value.get<std::string>());
            else
                throw std::invalid_argument("unknown exact option key \"" + key + "\"");
        }

        auto* self = const_cast<cddp_instance*>(instance);
        const auto start = std::chrono::steady_clock::now();
        const cddp::ExactResult result =
            cddp::enumerate_optimal(instance->ins, self->metrics_ref(), bounds, objective, bm);

        json report = {
            {"algorithm", "exact"},
            {"objective", cddp::to_string(objective)},
            {"feasible", result.feasible},
            {"value", result.feasible ? json(result.best_value) : json()},
            {"states_visited", result.states_visited},
            {"wall_time_s", seconds_since(start)},
            {"evaluation", result.feasible
                               ? json::parse(cddp::eval_result_to_json(result.best_eval))
                               : json()},
        };
        *out_plan = result.feasible ? new cddp_plan{result.best_plan} : nullptr;
        *out_report_json = copy_out(report.dump(2));
        return CDDP_OK;
    });
}

cddp_status cddp_export_mps(const cddp_instance* instance, int battery_model, char** out_text) {
    return guarded([&] {
        require(instance != nullptr && out_text != nullptr, "null pointer argument");
        cddp::MpsConfig config;
        config.battery_model = battery_from_int(battery_model);
        auto* self = const_cast<cddp_instance*>(instance);
        *out_text = copy_out(cddp::export_mps(instance->ins, self->metrics_ref(), config));
        return CDDP_OK;
    });
}

cddp_status cddp_verify_solution_text(const cddp_instance* instance, const char* solution_text,
                                      double bound, int battery_model,
                                      char** out_report_json) {
    return guarded([&] {
        require(instance != nullptr && solution_text != nullptr && out_report_json != nullptr,
                "null pointer argument");
        const cddp::BatteryModel bm = battery_from_int(battery_model);
        std::map<std::string, double> values;
        try {
            values = cddp::parse_solution_text(solution_text);
        } catch (const std::runtime_error& e) {
            throw solution_parse_error(e.what());
        }
        auto* self = const_cast<cddp_instance*>(instance);
        const cddp::SolutionVerification verdict =
            cddp::verify_solution_values(instance->ins, self->metrics_ref(), values, bound, bm);
        json report = {
            {"plan", json::parse(cddp::plan_to_json(verdict.plan))},
            {"feasible", verdict.eval.feasible()},
            {"distance_m", verdict.distance_m},
            {"gap", verdict.gap},
            {"evaluation", json::parse(cddp::eval_result_to_json(verdict.eval))},
        };
        *out_report_json = copy_out(report.dump(2));
        return CDDP_OK;
    });
}

cddp_status cddp_render_svg(const cddp_instance* instance, const cddp_plan* plan,
                            double width_px, int samples_per_arc, char** out_svg) {
    return guarded([&] {
        require(instance != nullptr && out_svg != nullptr, "null pointer argument");
        cddp::SvgConfig config;
        if (width_px > 0.0) config.width_px = width_px;
        if (samples_per_arc > 0) config.samples_per_arc = samples_per_arc;
        *out_svg = copy_out(cddp::render_svg(instance->ins,
                                             plan != nullptr ? plan->plan : cddp::Plan{},
                                             config));
        return CDDP_OK;
    });
}

}  // extern "C"
