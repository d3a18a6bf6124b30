#ifndef CDDP_H
#define CDDP_H

/*
 * C interface to the communication-aware drone delivery toolkit. All state
 * lives behind the two opaque handle types; every fallible call returns a
 * status code and, on failure, leaves a message retrievable (per thread)
 * through cddp_last_error(). Strings handed out through `char**` out
 * parameters are heap copies owned by the caller; release them with
 * cddp_string_free().
 *
 * Structured inputs and outputs are JSON strings, documented per function.
 * Battery semantics are selected by an integer: CDDP_BATTERY_RESET swaps to
 * a full pack at every trip-start depot, CDDP_BATTERY_CARRY keeps the charge
 * across trips so only charging stations refill.
 *
 * Handles are not internally synchronized (an instance lazily caches its
 * arc-metric table); share one across threads only behind a caller's lock.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cddp_status {
    CDDP_OK = 0,
    CDDP_ERROR_ARGUMENT = 1,  /* invalid parameter, option, or input value */
    CDDP_ERROR_PARSE = 2,     /* JSON or solution text did not parse */
    CDDP_ERROR_TOO_LARGE = 3, /* enumeration or export exceeded its budget */
    CDDP_ERROR_INTERNAL = 4   /* unexpected failure; see cddp_last_error() */
} cddp_status;

#define CDDP_BATTERY_RESET 0
#define CDDP_BATTERY_CARRY 1

typedef struct cddp_instance cddp_instance;
typedef struct cddp_plan cddp_plan;

/* Message of the calling thread's most recent failure; "" after success. */
const char* cddp_last_error(void);

void cddp_string_free(char* s);
void cddp_instance_free(cddp_instance* instance);
void cddp_plan_free(cddp_plan* plan);

/*
 * Benchmark generator. config_json may be NULL or "{}" for defaults; keys:
 *   setting (three-letter code, default "UUL"), customers, seed,
 *   region_width_m, region_height_m, horizon_s, hex_radius_m,
 *   perturbation_m, depot_spacing_m, cs_spacing_m, hotpoints,
 *   cluster_sigma_m, customers_per_drone, h_max, o_max_s,
 *   r_segments, speed_mps, battery_range_m.
 * Unknown keys are rejected. Identical configs give identical instances.
 */
cddp_status cddp_generate(const char* config_json, cddp_instance** out);

cddp_status cddp_instance_from_json(const char* json, cddp_instance** out);
cddp_status cddp_instance_to_json(const cddp_instance* instance, char** out_json);

/* 16-hex-digit content hash, stable across save/load. */
cddp_status cddp_instance_hash(const cddp_instance* instance, char** out_hash);

/* Counts-and-sizes overview: node totals per kind, stations, drones,
 * region, horizon, thresholds, hash. */
cddp_status cddp_instance_summary(const cddp_instance* instance, char** out_json);

/* Per-trip limits; pass INFINITY to lift one. */
cddp_status cddp_instance_set_thresholds(cddp_instance* instance, double h_max, double o_max_s);

cddp_status cddp_plan_from_json(const char* json, cddp_plan** out);
cddp_status cddp_plan_to_json(const cddp_plan* plan, char** out_json);

/* Full feasibility audit: total distance, per-trip stats, violation list. */
cddp_status cddp_evaluate(const cddp_instance* instance, const cddp_plan* plan,
                          int battery_model, char** out_report_json);

/*
 * Genetic solver. config_json may be NULL or "{}"; keys:
 *   population, generations (0 = ten per customer), time_limit_s,
 *   penalty_factor (-1 = scale by region size, 0 = off),
 *   crossover_prob, crossover_eta, mutation_prob (-1 = one per genome),
 *   mutation_eta, crossover ("sbx" | "one_point"),
 *   battery ("reset" | "carry"), seed.
 * Always yields its best plan; the report says whether it is feasible:
 *   {algorithm, feasible, distance_m, fitness, generations, evaluations,
 *    wall_time_s, evaluation:{...}}.
 */
cddp_status cddp_solve_ga(const cddp_instance* instance, const char* config_json,
                          cddp_plan** out_plan, char** out_report_json);

/*
 * Exhaustive search, optimal within its structural bounds. options_json may
 * be NULL or "{}"; keys:
 *   objective ("total_distance" | "minmax_handover" | "minmax_outage"),
 *   max_interior, max_trips (0 = one per customer), state_budget,
 *   whitelist (node-id array; each drone's own depots are always allowed),
 *   battery ("reset" | "carry").
 * When no feasible plan exists *out_plan is NULL and the report says
 * feasible:false. A blown state budget returns CDDP_ERROR_TOO_LARGE.
 * Report: {algorithm, objective, feasible, value, states_visited,
 *          wall_time_s, evaluation:{...}}.
 */
cddp_status cddp_solve_exact(const cddp_instance* instance, const char* options_json,
                             cddp_plan** out_plan, char** out_report_json);

/* Free-format MPS text of the mixed-integer model. */
cddp_status cddp_export_mps(const cddp_instance* instance, int battery_model, char** out_text);

/*
 * Check an external solver's variable values (`name value` lines, '#'
 * comments) against the instance: rebuilds the plan from the x variables,
 * audits it, and reports {plan:{...}, feasible, distance_m, gap,
 * evaluation:{...}}. gap is (distance - bound) / bound when bound > 0.
 */
cddp_status cddp_verify_solution_text(const cddp_instance* instance, const char* solution_text,
                                      double bound, int battery_model, char** out_report_json);

/* Route map as a standalone SVG document; plan may be NULL for the bare
 * map. width_px <= 0 or samples_per_arc <= 0 pick the defaults (900, 100). */
cddp_status cddp_render_svg(const cddp_instance* instance, const cddp_plan* plan,
                            double width_px, int samples_per_arc, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* CDDP_H */
