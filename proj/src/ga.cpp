#include "cddp/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cddp {

void GAConfig::validate() const {
    auto fail = [](const char* msg) { throw std::invalid_argument(std::string("ga: ") + msg); };
    if (population_size < 2) fail("population_size must be >= 2");
    if (max_generations < 0) fail("max_generations must be >= 0");
    if (!(time_limit_s > 0.0)) fail("time_limit_s must be positive");
    if (crossover_prob < 0.0 || crossover_prob > 1.0) fail("crossover_prob must be in [0,1]");
    if (mutation_prob > 1.0) fail("mutation_prob must be <= 1");
    if (crossover_eta < 0.0 || mutation_eta < 0.0) fail("distribution indices must be >= 0");
}

int genome_length(const Instance& instance) {
    return instance.drone_count() * instance.customer_count() * instance.flyable_count();
}

std::vector<int> recover(const std::vector<int>& labels) {
    std::vector<int> out;
    out.reserve(labels.size());
    for (int label : labels) {
        if (out.empty() || out.back() != label) out.push_back(label);
    }
    return out;
}

namespace {

// Nearest depot to `from`, ties to the smaller node id.
int nearest_depot(const Instance& instance, int from) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const Node& node : instance.nodes) {
        if (node.kind != NodeKind::Depot) continue;
        const double d2 = squared_distance(instance.position_of(from), node.position);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = node.id;
        }
    }
    return best;
}

}  // namespace

Plan decode(const std::vector<int>& genes, const Instance& instance) {
    const int n_drones = instance.drone_count();
    const int segment_len = instance.customer_count() * instance.flyable_count();
    if (static_cast<int>(genes.size()) != n_drones * segment_len)
        throw std::invalid_argument("decode: genome length does not match the instance");

    Plan plan;
    plan.trips_by_drone.resize(static_cast<std::size_t>(n_drones));
    std::vector<bool> served(instance.nodes.size(), false);

    for (int u = 0; u < n_drones; ++u) {
        const Drone& drone = instance.drones[static_cast<std::size_t>(u)];
        std::vector<int> labels(genes.begin() + static_cast<std::ptrdiff_t>(u) * segment_len,
                                genes.begin() + static_cast<std::ptrdiff_t>(u + 1) * segment_len);
        labels = recover(labels);
        if (labels.empty() || labels.front() != drone.start_depot)
            labels.insert(labels.begin(), drone.start_depot);

        auto& trips = plan.trips_by_drone[static_cast<std::size_t>(u)];
        int trip_start = drone.start_depot;
        std::vector<int> interior;
        bool has_customer = false;

        auto close_trip = [&](int end_depot) {
            // Skipped served-customer labels can leave the same node twice in
            // a row: a zero-length arc that recover() could not see. Dropping
            // the duplicate changes no metric, so normalize it away.
            interior.erase(std::unique(interior.begin(), interior.end()), interior.end());

            // A customer-less loop that swaps no battery is dead weight under
            // every objective and every battery model; emitting it would also
            // carve a fitness valley around genomes that almost remove it.
            // Repositioning hops between distinct depots and loops through a
            // charging station keep their value, so they stay.
            if (trip_start == end_depot && !has_customer) {
                const bool swaps_battery =
                    std::any_of(interior.begin(), interior.end(), [&](int node) {
                        return instance.kind_of(node) == NodeKind::ChargingStation;
                    });
                if (!swaps_battery) {
                    interior.clear();
                    return;
                }
            }

            Trip trip;
            trip.nodes.reserve(interior.size() + 2);
            trip.nodes.push_back(trip_start);
            trip.nodes.insert(trip.nodes.end(), interior.begin(), interior.end());
            trip.nodes.push_back(end_depot);
            trips.push_back(std::move(trip));
            trip_start = end_depot;
            interior.clear();
            has_customer = false;
        };

        for (std::size_t k = 1; k < labels.size(); ++k) {
            const int label = labels[k];
            const NodeKind kind = instance.kind_of(label);
            if (kind == NodeKind::Depot) {
                // A depot closes the open trip; an empty hop to the depot we
                // already occupy would be a zero-length loop, so skip it.
                if (interior.empty() && label == trip_start) continue;
                close_trip(label);
                continue;
            }
            if (kind == NodeKind::Customer) {
                if (served[static_cast<std::size_t>(label)]) continue;
                if (has_customer) {
                    // One customer per trip: park the open trip at the
                    // nearest depot, then start the next one from there.
                    const int via = nearest_depot(instance, interior.back());
                    close_trip(via);
                }
                interior.push_back(label);
                served[static_cast<std::size_t>(label)] = true;
                has_customer = true;
                continue;
            }
            interior.push_back(label);
        }

        if (!interior.empty()) close_trip(drone.end_depot);
        const int at = trips.empty() ? drone.start_depot : trips.back().nodes.back();
        if (at != drone.end_depot) close_trip(drone.end_depot);
    }
    return plan;
}

std::vector<Individual> sample_population(const GAConfig& config, const Instance& instance,
                                          Rng& rng) {
    const int len = genome_length(instance);
    const int hi = instance.flyable_count() - 1;
    std::vector<Individual> population(static_cast<std::size_t>(config.population_size));
    for (Individual& ind : population) {
        ind.genes.resize(static_cast<std::size_t>(len));
        for (int& g : ind.genes) g = rng.uniform_int(0, hi);
    }
    return population;
}

namespace {

int round_clamp(double value, int hi) {
    const int rounded = static_cast<int>(std::lround(value));
    return std::min(std::max(rounded, 0), hi);
}

}  // namespace

void crossover(const Individual& parent_a, const Individual& parent_b, const GAConfig& config,
               int n_flyable, Rng& rng, Individual& child_a, Individual& child_b) {
    if (parent_a.genes.size() != parent_b.genes.size())
        throw std::invalid_argument("crossover: parent genomes differ in length");
    const std::size_t len = parent_a.genes.size();
    child_a.genes = parent_a.genes;
    child_b.genes = parent_b.genes;
    const int hi = n_flyable - 1;

    if (config.crossover_kind == GAConfig::Crossover::OnePoint) {
        if (len >= 2 && rng.uniform() <= config.crossover_prob) {
            const std::size_t cut =
                static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(len) - 1));
            for (std::size_t k = cut; k < len; ++k)
                std::swap(child_a.genes[k], child_b.genes[k]);
        }
        return;
    }

    // Integer SBX, gene by gene. The spread factor beta concentrates
    // children near the parents for larger eta.
    for (std::size_t k = 0; k < len; ++k) {
        if (rng.uniform() > config.crossover_prob) continue;
        const double a = static_cast<double>(parent_a.genes[k]);
        const double b = static_cast<double>(parent_b.genes[k]);
        const double u = rng.uniform();
        const double exponent = 1.0 / (config.crossover_eta + 1.0);
        const double beta = (u <= 0.5) ? std::pow(2.0 * u, exponent)
                                       : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
        child_a.genes[k] = round_clamp(0.5 * ((1.0 + beta) * a + (1.0 - beta) * b), hi);
        child_b.genes[k] = round_clamp(0.5 * ((1.0 - beta) * a + (1.0 + beta) * b), hi);
    }
}

void mutate(Individual& individual, const GAConfig& config, double mutation_prob, int n_flyable,
            Rng& rng) {
    const int hi = n_flyable - 1;
    if (hi <= 0) return;
    const double span = static_cast<double>(hi);
    for (int& gene : individual.genes) {
        if (rng.uniform() >= mutation_prob) continue;
        const double x = static_cast<double>(gene);
        const double delta1 = x / span;
        const double delta2 = (span - x) / span;
        const double u = rng.uniform();
        const double exponent = 1.0 / (config.mutation_eta + 1.0);
        double deltaq;
        if (u < 0.5) {
            const double val =
                2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, config.mutation_eta + 1.0);
            deltaq = std::pow(val, exponent) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) +
                               2.0 * (u - 0.5) * std::pow(1.0 - delta2, config.mutation_eta + 1.0);
            deltaq = 1.0 - std::pow(val, exponent);
        }
        gene = round_clamp(x + deltaq * span, hi);
    }
}

double normalized_violation_sum(const EvalResult& eval, const Instance& instance) {
    double total = 0.0;
    for (const Violation& v : eval.violations) {
        double normalizer = 1.0;
        switch (v.cls) {
            case ViolationClass::CustomerCoverage:
                normalizer = std::max(instance.customer_count(), 1);
                break;
            case ViolationClass::TimeWindow:
            case ViolationClass::Horizon:
                normalizer = instance.horizon_s;
                break;
            case ViolationClass::Handover:
                normalizer = std::isfinite(instance.thresholds.h_max)
                                 ? std::max(instance.thresholds.h_max, 1.0)
                                 : 1.0;
                break;
            case ViolationClass::Outage:
                normalizer = std::isfinite(instance.thresholds.o_max_s)
                                 ? std::max(instance.thresholds.o_max_s, 1.0)
                                 : 1.0;
                break;
            case ViolationClass::Battery:
            case ViolationClass::TripStructure:
            case ViolationClass::DepotChaining:
                normalizer = 1.0;
                break;
        }
        total += v.magnitude / normalizer;
    }
    return total;
}

double penalized_fitness(const EvalResult& eval, const Instance& instance, double penalty_factor) {
    return eval.total_distance_m + penalty_factor * normalized_violation_sum(eval, instance);
}

namespace {

struct Evaluation {
    double fitness;
    double distance;
    double violation;
    bool feasible;
};

Evaluation evaluate(const std::vector<int>& genes, const Instance& instance,
                    const MetricMatrix& metrics, const GAConfig& config, double penalty_factor) {
    const Plan plan = decode(genes, instance);
    const EvalResult eval = check_feasibility(plan, instance, metrics, config.battery_model);
    const double violation = normalized_violation_sum(eval, instance);
    return {eval.total_distance_m + penalty_factor * violation, eval.total_distance_m, violation,
            eval.feasible()};
}

}  // namespace

GAResult run_ga(const Instance& instance, const MetricMatrix& metrics, const GAConfig& config) {
    config.validate();
    instance.validate();
    const auto t_start = std::chrono::steady_clock::now();
    auto elapsed_s = [&t_start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    const int len = genome_length(instance);
    const int n_flyable = instance.flyable_count();
    const int max_generations =
        config.max_generations > 0 ? config.max_generations : 10 * instance.customer_count();
    const double mutation_prob =
        config.mutation_prob >= 0.0 ? config.mutation_prob : 1.0 / std::max(len, 1);
    const double penalty_factor =
        config.penalty_factor >= 0.0
            ? config.penalty_factor
            : 10.0 * std::hypot(instance.region.width_m, instance.region.height_m);

    Rng rng(config.seed);
    GAResult result;

    std::vector<Individual> population = sample_population(config, instance, rng);
    auto apply = [&](Individual& ind) {
        const Evaluation e = evaluate(ind.genes, instance, metrics, config, penalty_factor);
        ind.fitness = e.fitness;
        ind.distance_m = e.distance;
        ind.violation_sum = e.violation;
        ind.feasible = e.feasible;
        ++result.stats.evaluations;
    };
    for (Individual& ind : population) apply(ind);

    // Track the champion across all evaluations: the cheapest feasible
    // genome, or the least-violating one while nothing feasible exists.
    Individual champion;
    bool have_champion = false;
    auto offer = [&](const Individual& ind) {
        if (!have_champion) {
            champion = ind;
            have_champion = true;
            return;
        }
        if (ind.feasible != champion.feasible) {
            if (ind.feasible) champion = ind;
            return;
        }
        if (ind.feasible) {
            if (ind.distance_m < champion.distance_m) champion = ind;
        } else if (ind.violation_sum < champion.violation_sum ||
                   (ind.violation_sum == champion.violation_sum &&
                    ind.fitness < champion.fitness)) {
            champion = ind;
        }
    };
    for (const Individual& ind : population) offer(ind);

    auto by_fitness = [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; };
    std::stable_sort(population.begin(), population.end(), by_fitness);
    result.stats.best_fitness_trace.push_back(population.front().fitness);

    const int pop_size = config.population_size;
    for (int gen = 1; gen <= max_generations; ++gen) {
        if (elapsed_s() > config.time_limit_s) break;

        // Binary tournament by penalized fitness; the earlier pick wins ties.
        auto pick_parent = [&]() -> const Individual& {
            const Individual& a = population[static_cast<std::size_t>(
                rng.uniform_int(0, pop_size - 1))];
            const Individual& b = population[static_cast<std::size_t>(
                rng.uniform_int(0, pop_size - 1))];
            return b.fitness < a.fitness ? b : a;
        };

        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(pop_size) + 1);
        while (static_cast<int>(offspring.size()) < pop_size) {
            const Individual& pa = pick_parent();
            const Individual& pb = pick_parent();
            Individual ca, cb;
            crossover(pa, pb, config, n_flyable, rng, ca, cb);
            mutate(ca, config, mutation_prob, n_flyable, rng);
            mutate(cb, config, mutation_prob, n_flyable, rng);
            offspring.push_back(std::move(ca));
            offspring.push_back(std::move(cb));
        }
        offspring.resize(static_cast<std::size_t>(pop_size));

        for (Individual& ind : offspring) {
            apply(ind);
            offer(ind);
        }

        // (mu + lambda) elitist survival. Offspring go first so that on equal
        // fitness the newer genome survives: the decoder maps many genomes to
        // the same plan, and without neutral drift across those plateaus the
        // population freezes long before the label runs are cleaned up.
        offspring.insert(offspring.end(), std::make_move_iterator(population.begin()),
                         std::make_move_iterator(population.end()));
        std::stable_sort(offspring.begin(), offspring.end(), by_fitness);
        offspring.resize(static_cast<std::size_t>(pop_size));
        population = std::move(offspring);

        result.stats.best_fitness_trace.push_back(population.front().fitness);
        result.stats.generations = gen;
    }

    result.best_plan = decode(champion.genes, instance);
    result.best_eval = check_feasibility(result.best_plan, instance, metrics, config.battery_model);
    result.found_feasible = champion.feasible;
    result.best_fitness = champion.fitness;
    result.stats.wall_time_s = elapsed_s();
    return result;
}

}  // namespace cddp
