// Command-line front end over the shared library: generate instances,
// solve them, audit plans, export the MIP, check external solver output,
// draw route maps, and sweep benchmark grids into CSV.
#include <cddp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

// Process exit codes, kept stable for scripts.
constexpr int kExitUsage = 1;       // bad flags, unreadable files, bad input
constexpr int kExitInfeasible = 2;  // best effort found, constraints unmet
constexpr int kExitTooLarge = 3;    // enumeration budget or size limit hit

struct Str {
    char* s = nullptr;
    ~Str() { cddp_string_free(s); }
    std::string view() const { return s == nullptr ? std::string() : std::string(s); }
};

struct InstanceHandle {
    cddp_instance* h = nullptr;
    ~InstanceHandle() { cddp_instance_free(h); }
};

struct PlanHandle {
    cddp_plan* h = nullptr;
    ~PlanHandle() { cddp_plan_free(h); }
};

// Thrown to unwind into main's single reporting site.
struct CommandError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CommandError{code, message};
}

void check(cddp_status status, const std::string& context) {
    if (status == CDDP_OK) return;
    const int code = status == CDDP_ERROR_TOO_LARGE ? kExitTooLarge : kExitUsage;
    fail(code, context + ": " + cddp_last_error());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kExitUsage, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) fail(kExitUsage, "cannot write " + path);
    std::cerr << "wrote " << path << "\n";
}

// Report strings from the library end without a newline; files should not.
void write_report(const std::string& path, const std::string& text) {
    write_file(path, text.empty() || text.back() == '\n' ? text : text + "\n");
}

void print_report(const std::string& text) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
}

// --out-dir beats CDDP_OUT_DIR beats the working directory.
std::string base_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    const char* env = std::getenv("CDDP_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : ".";
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    return buf;
}

// Default artifacts live under <base>/<instance hash>-<timestamp>/. The
// directory is created on first use and shared by one command invocation.
class RunDir {
  public:
    RunDir(std::string base, cddp_instance* ins) : base_(std::move(base)), ins_(ins) {}

    std::string path_for(const std::string& filename) {
        if (dir_.empty()) {
            Str hash;
            check(cddp_instance_hash(ins_, &hash.s), "hash");
            dir_ = base_ + "/" + hash.view() + "-" + timestamp_utc();
            std::filesystem::create_directories(dir_);
        }
        return dir_ + "/" + filename;
    }

  private:
    std::string base_;
    cddp_instance* ins_;
    std::string dir_;
};

void load_instance(const std::string& path, InstanceHandle& ins) {
    check(cddp_instance_from_json(read_file(path).c_str(), &ins.h), path);
}

void load_plan(const std::string& path, PlanHandle& plan) {
    check(cddp_plan_from_json(read_file(path).c_str(), &plan.h), path);
}

int battery_code(const std::string& name) {
    return name == "carry" ? CDDP_BATTERY_CARRY : CDDP_BATTERY_RESET;
}

// Overwrite only the limits the user asked for, keeping the other as-is.
void apply_thresholds(cddp_instance* ins, const CLI::Option* hmax_opt, double hmax,
                      const CLI::Option* omax_opt, double omax) {
    if (hmax_opt->count() == 0 && omax_opt->count() == 0) return;
    Str summary;
    check(cddp_instance_summary(ins, &summary.s), "summary");
    const json s = json::parse(summary.view());
    const double h0 = s.at("h_max").is_null() ? INFINITY : s.at("h_max").get<double>();
    const double o0 = s.at("o_max_s").is_null() ? INFINITY : s.at("o_max_s").get<double>();
    check(cddp_instance_set_thresholds(ins, hmax_opt->count() != 0 ? hmax : h0,
                                       omax_opt->count() != 0 ? omax : o0),
          "thresholds");
}

// ---------------------------------------------------------------- bench ---

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (const char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double max_trip_stat(const json& evaluation, const char* key) {
    double best = 0.0;
    for (const json& trip : evaluation.at("trips"))
        best = std::max(best, trip.at(key).get<double>());
    return best;
}

constexpr const char* kBenchHeader =
    "setting,customers,seed,instance_hash,case,algorithm,objective,feasible,value,"
    "distance_m,max_handovers,max_outage_s,h_max,o_max_s,h_star,h_star_solver,"
    "o_star,o_star_solver,generations,states_visited,wall_time_s,status";

struct BenchRow {
    std::string setting;
    int customers = 0;
    std::uint64_t seed = 0;
    std::string hash, case_name, algorithm, objective;
    std::string feasible, value, distance, max_h, max_o, h_max, o_max;
    std::string h_star, h_star_solver, o_star, o_star_solver;
    std::string generations, states, wall;
    std::string status = "ok";

    std::string line() const {
        const std::string fields[] = {setting,
                                      std::to_string(customers),
                                      std::to_string(seed),
                                      hash,
                                      case_name,
                                      algorithm,
                                      objective,
                                      feasible,
                                      value,
                                      distance,
                                      max_h,
                                      max_o,
                                      h_max,
                                      o_max,
                                      h_star,
                                      h_star_solver,
                                      o_star,
                                      o_star_solver,
                                      generations,
                                      states,
                                      wall,
                                      status};
        std::string out;
        for (const std::string& f : fields) {
            if (!out.empty()) out += ',';
            out += csv_field(f);
        }
        return out;
    }
};

// One threshold case: "unconstrained", or "H:O" percentage relaxations of
// the singular optima (the paper-style "(20,10)" labels in the CSV).
struct BenchCase {
    std::string label;
    bool relaxed = false;
    double h_pct = 0.0, o_pct = 0.0;
};

BenchCase parse_case(const std::string& text) {
    if (text == "unconstrained") return {text, false, 0.0, 0.0};
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        fail(kExitUsage, "case '" + text + "' is neither 'unconstrained' nor 'H:O' percentages");
    BenchCase c;
    c.relaxed = true;
    try {
        c.h_pct = std::stod(text.substr(0, colon));
        c.o_pct = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
        fail(kExitUsage, "case '" + text + "' is neither 'unconstrained' nor 'H:O' percentages");
    }
    c.label = "(" + fmt_g(c.h_pct) + "," + fmt_g(c.o_pct) + ")";
    return c;
}

struct BenchKnobs {
    std::string algo = "auto";  // auto | exact | ga
    long long state_budget = 20'000'000;
    int population = 0;       // 0 -> library default
    int generations = 200;    // 0 -> library default (10 per customer)
    double region_m = 0.0;    // 0 -> generator default (square region otherwise)
    double hex_radius_m = 0.0;  // 0 -> generator default
};

struct SolveOutcome {
    bool ok = false;
    std::string error;
    std::string algorithm;
    json report;
};

// Solve one configuration, preferring the oracle and falling back to the
// GA when the search space blows the budget (recorded in the row).
SolveOutcome bench_solve(cddp_instance* ins, const std::string& objective,
                         const BenchKnobs& knobs, std::uint64_t seed) {
    SolveOutcome out;
    if (knobs.algo != "ga") {
        json options = {{"objective", objective}, {"state_budget", knobs.state_budget}};
        PlanHandle plan;
        Str report;
        const cddp_status rc = cddp_solve_exact(ins, options.dump().c_str(), &plan.h, &report.s);
        if (rc == CDDP_OK) {
            out.ok = true;
            out.algorithm = "exact";
            out.report = json::parse(report.view());
            return out;
        }
        if (rc != CDDP_ERROR_TOO_LARGE || knobs.algo == "exact") {
            out.error = (rc == CDDP_ERROR_TOO_LARGE ? "too_large: " : "error: ");
            out.error += cddp_last_error();
            return out;
        }
    }
    // The GA minimizes distance under the instance thresholds; minmax
    // objectives are estimated afterwards from its best plan.
    json config = {{"seed", seed}};
    if (knobs.population > 0) config["population"] = knobs.population;
    if (knobs.generations > 0) config["generations"] = knobs.generations;
    PlanHandle plan;
    Str report;
    const cddp_status rc = cddp_solve_ga(ins, config.dump().c_str(), &plan.h, &report.s);
    if (rc != CDDP_OK) {
        out.error = std::string("error: ") + cddp_last_error();
        return out;
    }
    out.ok = true;
    out.algorithm = "ga";
    out.report = json::parse(report.view());
    if (objective == "minmax_handover")
        out.report["value"] = max_trip_stat(out.report.at("evaluation"), "handovers");
    else if (objective == "minmax_outage")
        out.report["value"] = max_trip_stat(out.report.at("evaluation"), "outage_s");
    else
        out.report["value"] = out.report.at("distance_m");
    return out;
}

void fill_row_from_outcome(BenchRow& row, const SolveOutcome& outcome) {
    row.algorithm = outcome.algorithm;
    if (!outcome.ok) {
        row.status = outcome.error;
        return;
    }
    const json& r = outcome.report;
    const bool feasible = r.at("feasible").get<bool>();
    row.feasible = feasible ? "true" : "false";
    if (!r.at("value").is_null()) row.value = fmt_g(r.at("value").get<double>());
    if (r.contains("states_visited"))
        row.states = std::to_string(r.at("states_visited").get<long long>());
    if (r.contains("generations")) row.generations = std::to_string(r.at("generations").get<int>());
    row.wall = fmt_g(r.at("wall_time_s").get<double>());
    const json& evaluation = r.at("evaluation");
    if (!evaluation.is_null()) {
        row.distance = fmt_g(evaluation.at("total_distance_m").get<double>());
        row.max_h = fmt_g(max_trip_stat(evaluation, "handovers"));
        row.max_o = fmt_g(max_trip_stat(evaluation, "outage_s"));
    }
}

int cmd_bench(const std::vector<std::string>& settings, const std::vector<int>& sizes,
              const std::vector<std::uint64_t>& seeds, const std::vector<std::string>& case_texts,
              const BenchKnobs& knobs, const std::string& out_csv) {
    std::vector<BenchCase> cases;
    cases.reserve(case_texts.size());
    bool needs_stars = false;
    for (const std::string& text : case_texts) {
        cases.push_back(parse_case(text));
        needs_stars = needs_stars || cases.back().relaxed;
    }

    std::string csv = std::string(kBenchHeader) + "\n";
    for (const std::string& setting : settings) {
        for (const int size : sizes) {
            for (const std::uint64_t seed : seeds) {
                BenchRow base;
                base.setting = setting;
                base.customers = size;
                base.seed = seed;

                json config = {{"setting", setting}, {"customers", size}, {"seed", seed}};
                if (knobs.region_m > 0.0) {
                    config["region_width_m"] = knobs.region_m;
                    config["region_height_m"] = knobs.region_m;
                }
                if (knobs.hex_radius_m > 0.0) config["hex_radius_m"] = knobs.hex_radius_m;
                InstanceHandle ins;
                if (cddp_generate(config.dump().c_str(), &ins.h) != CDDP_OK) {
                    // A bad grid point is one row, not a dead run.
                    base.case_name = "generate";
                    base.status = std::string("error: ") + cddp_last_error();
                    csv += base.line() + "\n";
                    continue;
                }
                Str hash;
                check(cddp_instance_hash(ins.h, &hash.s), "hash");
                base.hash = hash.view();

                // Thresholds are per-case; start every case from unlimited.
                check(cddp_instance_set_thresholds(ins.h, INFINITY, INFINITY), "thresholds");

                // Singular optima, solved once per instance when some case
                // relaxes them.
                SolveOutcome h_star, o_star;
                if (needs_stars) {
                    // An infeasible best is no basis for a relaxation cap.
                    const auto settle = [&](const char* objective) {
                        SolveOutcome star = bench_solve(ins.h, objective, knobs, seed);
                        if (star.ok && !star.report.at("feasible").get<bool>()) {
                            star.ok = false;
                            star.error = "error: no feasible plan for " + std::string(objective);
                        }
                        return star;
                    };
                    h_star = settle("minmax_handover");
                    o_star = settle("minmax_outage");
                    base.h_star_solver = h_star.algorithm;
                    base.o_star_solver = o_star.algorithm;
                    if (h_star.ok) base.h_star = fmt_g(h_star.report.at("value").get<double>());
                    if (o_star.ok) base.o_star = fmt_g(o_star.report.at("value").get<double>());
                }

                for (const BenchCase& c : cases) {
                    BenchRow row = base;
                    row.case_name = c.label;
                    row.objective = "total_distance";
                    if (c.relaxed) {
                        if (!h_star.ok || !o_star.ok) {
                            row.status = "error: singular optimum unavailable";
                            csv += row.line() + "\n";
                            continue;
                        }
                        const double h_cap =
                            (1.0 + c.h_pct / 100.0) * h_star.report.at("value").get<double>();
                        const double o_cap =
                            (1.0 + c.o_pct / 100.0) * o_star.report.at("value").get<double>();
                        check(cddp_instance_set_thresholds(ins.h, h_cap, o_cap), "thresholds");
                        row.h_max = fmt_g(h_cap);
                        row.o_max = fmt_g(o_cap);
                    } else {
                        check(cddp_instance_set_thresholds(ins.h, INFINITY, INFINITY),
                              "thresholds");
                    }
                    fill_row_from_outcome(row, bench_solve(ins.h, "total_distance", knobs, seed));
                    csv += row.line() + "\n";
                }
            }
        }
    }
    write_file(out_csv, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Communication-aware drone delivery toolkit"};
    app.require_subcommand(1);

    std::string out_dir_flag;
    app.add_option("--out-dir", out_dir_flag,
                   "directory for default artifacts (falls back to $CDDP_OUT_DIR, then .)");

    int exit_code = 0;

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
    std::string gen_setting = "UUL";
    int gen_customers = 10;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    double gen_region_w = 0, gen_region_h = 0, gen_hex = 0, gen_perturb = 0;
    double gen_hmax = 0, gen_omax = 0;
    int gen_drone_ratio = 0;
    gen->add_option("--setting", gen_setting,
                    "three-letter code: communication {U,P}, delivery {U,P}, size {L,T}");
    gen->add_option("--customers", gen_customers, "number of customers")
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "instance file (default <run dir>/instance.json)");
    auto* gen_rw = gen->add_option("--region-width", gen_region_w, "region width in meters");
    auto* gen_rh = gen->add_option("--region-height", gen_region_h, "region height in meters");
    auto* gen_hx = gen->add_option("--hex-radius", gen_hex, "station lattice circumradius");
    auto* gen_pb = gen->add_option("--perturbation", gen_perturb, "max station displacement");
    auto* gen_hm = gen->add_option("--hmax", gen_hmax, "per-trip handover limit");
    auto* gen_om = gen->add_option("--omax", gen_omax, "per-trip outage limit in seconds");
    auto* gen_cd = gen->add_option("--customers-per-drone", gen_drone_ratio,
                                   "fleet sizing ratio (ceil(customers/ratio) drones)");
    gen->callback([&] {
        json config = {{"setting", gen_setting}, {"customers", gen_customers}, {"seed", gen_seed}};
        if (gen_rw->count() != 0) config["region_width_m"] = gen_region_w;
        if (gen_rh->count() != 0) config["region_height_m"] = gen_region_h;
        if (gen_hx->count() != 0) config["hex_radius_m"] = gen_hex;
        if (gen_pb->count() != 0) config["perturbation_m"] = gen_perturb;
        if (gen_hm->count() != 0) config["h_max"] = gen_hmax;
        if (gen_om->count() != 0) config["o_max_s"] = gen_omax;
        if (gen_cd->count() != 0) config["customers_per_drone"] = gen_drone_ratio;
        InstanceHandle ins;
        check(cddp_generate(config.dump().c_str(), &ins.h), "generate");
        Str text, summary;
        check(cddp_instance_to_json(ins.h, &text.s), "serialize");
        check(cddp_instance_summary(ins.h, &summary.s), "summary");
        RunDir run(base_out_dir(out_dir_flag), ins.h);
        write_file(gen_out.empty() ? run.path_for("instance.json") : gen_out, text.view());
        print_report(summary.view());
    });

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "solve an instance with the GA or the oracle");
    std::string sv_instance, sv_algo = "ga", sv_battery = "reset", sv_objective = "total_distance";
    std::string sv_out_plan, sv_out_report, sv_crossover = "sbx";
    double sv_hmax = 0, sv_omax = 0, sv_time_limit = 0, sv_penalty = 0, sv_mut_prob = 0;
    int sv_population = 0, sv_generations = 0, sv_max_interior = 0, sv_max_trips = 0;
    long long sv_budget = 0;
    std::uint64_t sv_seed = 0;
    solve->add_option("-i,--instance", sv_instance, "instance JSON file")->required();
    solve->add_option("--algo", sv_algo, "ga or exact")
        ->check(CLI::IsMember({"ga", "exact"}));
    auto* sv_hm = solve->add_option("--hmax", sv_hmax, "override per-trip handover limit");
    auto* sv_om = solve->add_option("--omax", sv_omax, "override per-trip outage limit (s)");
    solve->add_option("--battery", sv_battery, "battery semantics across trips")
        ->check(CLI::IsMember({"reset", "carry"}));
    solve->add_option("--out-plan", sv_out_plan, "plan file (default <run dir>/plan.json)");
    solve->add_option("--out-report", sv_out_report, "report file (default <run dir>/report.json)");
    auto* sv_pop = solve->add_option("--population", sv_population, "GA population size");
    auto* sv_gen = solve->add_option("--generations", sv_generations, "GA generation limit");
    auto* sv_tl = solve->add_option("--time-limit", sv_time_limit, "GA wall-clock limit (s)");
    auto* sv_pf = solve->add_option("--penalty-factor", sv_penalty, "GA infeasibility penalty");
    auto* sv_mp = solve->add_option("--mutation-prob", sv_mut_prob, "GA per-gene mutation rate");
    auto* sv_cx = solve->add_option("--crossover", sv_crossover, "GA crossover operator")
                      ->check(CLI::IsMember({"sbx", "one_point"}));
    auto* sv_sd = solve->add_option("--seed", sv_seed, "GA seed");
    auto* sv_ob = solve->add_option("--objective", sv_objective, "oracle objective")
                      ->check(CLI::IsMember({"total_distance", "minmax_handover",
                                             "minmax_outage"}));
    auto* sv_mi = solve->add_option("--max-interior", sv_max_interior,
                                    "oracle limit on customers+stops per trip");
    auto* sv_mt = solve->add_option("--max-trips", sv_max_trips, "oracle limit on trips per drone");
    auto* sv_sb = solve->add_option("--state-budget", sv_budget, "oracle search-state budget");
    solve->callback([&] {
        InstanceHandle ins;
        load_instance(sv_instance, ins);
        apply_thresholds(ins.h, sv_hm, sv_hmax, sv_om, sv_omax);

        PlanHandle plan;
        Str report;
        if (sv_algo == "ga") {
            json config = {{"battery", sv_battery}};
            if (sv_pop->count() != 0) config["population"] = sv_population;
            if (sv_gen->count() != 0) config["generations"] = sv_generations;
            if (sv_tl->count() != 0) config["time_limit_s"] = sv_time_limit;
            if (sv_pf->count() != 0) config["penalty_factor"] = sv_penalty;
            if (sv_mp->count() != 0) config["mutation_prob"] = sv_mut_prob;
            if (sv_cx->count() != 0) config["crossover"] = sv_crossover;
            if (sv_sd->count() != 0) config["seed"] = sv_seed;
            check(cddp_solve_ga(ins.h, config.dump().c_str(), &plan.h, &report.s), "ga");
        } else {
            json options = {{"battery", sv_battery}, {"objective", sv_objective}};
            if (sv_mi->count() != 0) options["max_interior"] = sv_max_interior;
            if (sv_mt->count() != 0) options["max_trips"] = sv_max_trips;
            if (sv_sb->count() != 0) options["state_budget"] = sv_budget;
            check(cddp_solve_exact(ins.h, options.dump().c_str(), &plan.h, &report.s), "exact");
        }

        RunDir run(base_out_dir(out_dir_flag), ins.h);
        if (plan.h != nullptr) {
            Str plan_text;
            check(cddp_plan_to_json(plan.h, &plan_text.s), "plan");
            write_file(sv_out_plan.empty() ? run.path_for("plan.json") : sv_out_plan,
                       plan_text.view());
        }
        write_report(sv_out_report.empty() ? run.path_for("report.json") : sv_out_report,
                     report.view());
        print_report(report.view());
        if (!json::parse(report.view()).at("feasible").get<bool>()) exit_code = kExitInfeasible;
    });

    // --- eval --------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "audit a plan against an instance");
    std::string ev_instance, ev_plan, ev_battery = "reset", ev_out;
    eval->add_option("-i,--instance", ev_instance, "instance JSON file")->required();
    eval->add_option("-p,--plan", ev_plan, "plan JSON file")->required();
    eval->add_option("--battery", ev_battery, "battery semantics across trips")
        ->check(CLI::IsMember({"reset", "carry"}));
    eval->add_option("--out-report", ev_out, "also write the report to this file");
    eval->callback([&] {
        InstanceHandle ins;
        PlanHandle plan;
        load_instance(ev_instance, ins);
        load_plan(ev_plan, plan);
        Str report;
        check(cddp_evaluate(ins.h, plan.h, battery_code(ev_battery), &report.s), "evaluate");
        if (!ev_out.empty()) write_report(ev_out, report.view());
        print_report(report.view());
        if (!json::parse(report.view()).at("feasible").get<bool>()) exit_code = kExitInfeasible;
    });

    // --- mps ---------------------------------------------------------------
    auto* mps = app.add_subcommand("mps", "export the instance as a MIP in MPS format");
    std::string mp_instance, mp_battery = "reset", mp_out;
    mps->add_option("-i,--instance", mp_instance, "instance JSON file")->required();
    mps->add_option("--battery", mp_battery, "battery semantics across trips")
        ->check(CLI::IsMember({"reset", "carry"}));
    mps->add_option("-o,--out", mp_out, "model file (default <run dir>/model.mps)");
    mps->callback([&] {
        InstanceHandle ins;
        load_instance(mp_instance, ins);
        Str text;
        check(cddp_export_mps(ins.h, battery_code(mp_battery), &text.s), "export");
        RunDir run(base_out_dir(out_dir_flag), ins.h);
        write_file(mp_out.empty() ? run.path_for("model.mps") : mp_out, text.view());
    });

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "audit a MIP solver's solution file");
    std::string vf_instance, vf_solution, vf_battery = "reset", vf_out;
    double vf_bound = 0.0;
    verify->add_option("-i,--instance", vf_instance, "instance JSON file")->required();
    verify->add_option("-s,--solution", vf_solution, "solution file (`name value` lines)")
        ->required();
    verify->add_option("--bound", vf_bound, "solver objective for the gap column");
    verify->add_option("--battery", vf_battery, "battery semantics across trips")
        ->check(CLI::IsMember({"reset", "carry"}));
    verify->add_option("--out-report", vf_out, "also write the report to this file");
    verify->callback([&] {
        InstanceHandle ins;
        load_instance(vf_instance, ins);
        Str report;
        check(cddp_verify_solution_text(ins.h, read_file(vf_solution).c_str(), vf_bound,
                                        battery_code(vf_battery), &report.s),
              vf_solution);
        if (!vf_out.empty()) write_report(vf_out, report.view());
        print_report(report.view());
        if (!json::parse(report.view()).at("feasible").get<bool>()) exit_code = kExitInfeasible;
    });

    // --- plot --------------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render the coverage map and routes as SVG");
    std::string pl_instance, pl_plan, pl_out;
    double pl_width = 0.0;
    int pl_samples = 0;
    plot->add_option("-i,--instance", pl_instance, "instance JSON file")->required();
    plot->add_option("-p,--plan", pl_plan, "plan JSON file (omit for the bare map)");
    plot->add_option("--width", pl_width, "image width in pixels");
    plot->add_option("--samples", pl_samples, "outage sampling points per arc");
    plot->add_option("-o,--out", pl_out, "SVG file (default <run dir>/map.svg)");
    plot->callback([&] {
        InstanceHandle ins;
        load_instance(pl_instance, ins);
        PlanHandle plan;
        if (!pl_plan.empty()) load_plan(pl_plan, plan);
        Str svg;
        check(cddp_render_svg(ins.h, plan.h, pl_width, pl_samples, &svg.s), "render");
        RunDir run(base_out_dir(out_dir_flag), ins.h);
        write_file(pl_out.empty() ? run.path_for("map.svg") : pl_out, svg.view());
    });

    // --- bench -------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "sweep a benchmark grid into a CSV");
    std::vector<std::string> bn_settings = {"UUL"};
    std::vector<int> bn_sizes = {2};
    std::vector<std::uint64_t> bn_seeds = {1};
    std::vector<std::string> bn_cases = {"unconstrained"};
    BenchKnobs bn_knobs;
    std::string bn_out;
    bench->add_option("--settings", bn_settings, "three-letter setting codes")->delimiter(',');
    bench->add_option("--sizes", bn_sizes, "customer counts")->delimiter(',');
    bench->add_option("--seeds", bn_seeds, "instance seeds")->delimiter(',');
    bench->add_option("--cases", bn_cases,
                      "threshold cases: 'unconstrained' or 'H:O' percentage relaxations "
                      "of the singular optima (e.g. 20:10)")
        ->delimiter(',');
    bench->add_option("--algo", bn_knobs.algo, "auto (exact, GA fallback), exact, or ga")
        ->check(CLI::IsMember({"auto", "exact", "ga"}));
    bench->add_option("--state-budget", bn_knobs.state_budget, "oracle budget per solve");
    bench->add_option("--region", bn_knobs.region_m, "square region side in meters");
    bench->add_option("--hex-radius", bn_knobs.hex_radius_m, "station lattice circumradius");
    bench->add_option("--population", bn_knobs.population, "GA population size");
    bench->add_option("--generations", bn_knobs.generations,
                      "GA generation limit (0 = ten per customer)");
    bench->add_option("-o,--out", bn_out, "CSV file (default <out dir>/bench-<timestamp>.csv)");
    bench->callback([&] {
        const std::string out =
            bn_out.empty() ? base_out_dir(out_dir_flag) + "/bench-" + timestamp_utc() + ".csv"
                           : bn_out;
        exit_code = cmd_bench(bn_settings, bn_sizes, bn_seeds, bn_cases, bn_knobs, out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes are various; the documented contract is
        // 0 for help, 1 for usage problems.
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
