#pragma once

#include <cstdint>
#include <vector>

#include "cddp/instance.hpp"
#include "cddp/rng.hpp"
#include "cddp/solution.hpp"

namespace cddp {

// Fixed-length genome: n_drones contiguous segments of n_customers *
// n_flyable labels each, every gene a flyable node id.
struct Individual {
    std::vector<int> genes;

    // Filled in by evaluation; plain data so copies are cheap.
    double fitness = 0.0;
    double distance_m = 0.0;
    double violation_sum = 0.0;  // normalized, 0 when feasible
    bool feasible = false;
};

struct GAConfig {
    int population_size = 100;
    int max_generations = 0;       // 0 -> 10 * n_customers
    double time_limit_s = 3600.0;
    double penalty_factor = -1.0;  // < 0 -> 10 * region diagonal; 0 disables penalties
    double crossover_prob = 0.9;
    double crossover_eta = 15.0;
    double mutation_prob = -1.0;   // < 0 -> 1 / genome length; 0 disables mutation
    double mutation_eta = 20.0;
    enum class Crossover { Sbx, OnePoint };
    Crossover crossover_kind = Crossover::Sbx;
    BatteryModel battery_model = BatteryModel::ResetAtDepot;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

struct GAStats {
    int generations = 0;
    double wall_time_s = 0.0;
    long long evaluations = 0;
    std::vector<double> best_fitness_trace;  // one entry per generation, gen 0 first
};

struct GAResult {
    Plan best_plan;
    EvalResult best_eval;
    bool found_feasible = false;
    double best_fitness = 0.0;
    GAStats stats;
};

int genome_length(const Instance& instance);

// Collapses every maximal run of equal consecutive labels to one occurrence.
std::vector<int> recover(const std::vector<int>& labels);

// Deterministic genome-to-plan mapping. Per drone segment: recover the runs,
// force the segment to start at the drone's start depot, then scan left to
// right. Interior labels accumulate into the open trip; a depot label closes
// it (and a depot label on an empty trip is a repositioning hop, or a no-op
// if it names the depot we are already at). Customers already served are
// skipped; a second customer in an open trip first closes it via the nearest
// depot (ties to the smaller id). Open trips close at the end depot, and a
// final repositioning hop is appended whenever the day would otherwise end
// at the wrong depot. Total: every genome yields a structurally valid plan.
Plan decode(const std::vector<int>& genes, const Instance& instance);

std::vector<Individual> sample_population(const GAConfig& config, const Instance& instance,
                                          Rng& rng);

// Gene-wise integer SBX (round + clamp); one-point splice as the alternative.
void crossover(const Individual& parent_a, const Individual& parent_b, const GAConfig& config,
               int n_flyable, Rng& rng, Individual& child_a, Individual& child_b);

// Integer polynomial mutation, per gene with the resolved probability.
void mutate(Individual& individual, const GAConfig& config, double mutation_prob, int n_flyable,
            Rng& rng);

// objective + penalty_factor * sum of per-class normalized violation
// magnitudes (coverage by customer count, times by horizon, handover/outage
// excesses by their thresholds, battery/structure/chaining by one).
double normalized_violation_sum(const EvalResult& eval, const Instance& instance);
double penalized_fitness(const EvalResult& eval, const Instance& instance, double penalty_factor);

// Generational (mu + lambda) loop with binary tournaments; stops at the
// generation cap (10 * n_customers by default) or the wall-clock limit.
// Returns the best feasible plan seen, else the least-violating one.
GAResult run_ga(const Instance& instance, const MetricMatrix& metrics, const GAConfig& config);

}  // namespace cddp
