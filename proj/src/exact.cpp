#include "cddp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cddp {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Depth-first walk over all bounded plans. The simulation along each branch
// (departure rules, waiting, battery, swaps) reproduces simulate_schedule
// arc by arc, so a pruned branch is one the feasibility checker would
// reject and the accumulated sums are bitwise equal to the checker's.
//
// Search-space conventions beyond EnumerationBounds: interior nodes are
// distinct within a trip (revisits only add distance, handovers and outage,
// so no optimum is lost), and a trip must either move to a different depot
// or visit at least one interior node — a same-depot hop with no interior
// is a complete no-op and would only pad the space.
class Searcher {
public:
    Searcher(const Instance& ins, const MetricMatrix& m, const EnumerationBounds& bounds,
             ObjectiveKind objective, BatteryModel battery_model)
        : ins_(ins),
          m_(m),
          objective_(objective),
          battery_model_(battery_model),
          max_interior_(bounds.max_interior),
          max_trips_(bounds.max_trips > 0 ? bounds.max_trips
                                          : std::max(ins.customer_count(), 1)),
          budget_(bounds.state_budget) {
        bounds.validate(ins);
        require(ins.customer_count() <= 64, "exhaustive search supports at most 64 customers");

        std::vector<char> allowed(static_cast<std::size_t>(ins.flyable_count()),
                                  bounds.node_whitelist.empty() ? 1 : 0);
        for (int id : bounds.node_whitelist) allowed[static_cast<std::size_t>(id)] = 1;
        for (const Drone& d : ins.drones) {
            allowed[static_cast<std::size_t>(d.start_depot)] = 1;
            allowed[static_cast<std::size_t>(d.end_depot)] = 1;
        }
        for (int id = 0; id < ins.flyable_count(); ++id) {
            if (!allowed[static_cast<std::size_t>(id)]) continue;
            if (ins.kind_of(id) == NodeKind::Depot)
                depot_candidates_.push_back(id);
            else
                interior_candidates_.push_back(id);
        }
        work_.resize(ins.drones.size());
    }

    void set_collector(std::vector<Plan>* sink, std::size_t cap) {
        collect_ = sink;
        collect_cap_ = cap;
    }

    ExactResult run() {
        search_drone(0);
        ExactResult result;
        result.feasible = have_best_;
        result.best_plan = std::move(best_plan_);
        result.best_eval = std::move(best_eval_);
        result.best_value = best_value_;
        result.states_visited = states_;
        return result;
    }

private:
    void tick() {
        if (++states_ > budget_) throw SearchTooLarge(states_);
    }

    bool served(int customer_idx) const { return (served_mask_ >> customer_idx) & 1u; }

    // Candidate trip value after adding an arc, for incumbent pruning under
    // the min-max objectives.
    bool prune_by_incumbent(double new_total_distance, int trip_h, double trip_o) const {
        if (collect_ || !have_best_) return false;
        switch (objective_) {
            case ObjectiveKind::TotalDistance:
                return new_total_distance >= best_value_;
            case ObjectiveKind::MinmaxHandover:
                return std::max(worst_trip_value_, static_cast<double>(trip_h)) >= best_value_;
            case ObjectiveKind::MinmaxOutage:
                return std::max(worst_trip_value_, trip_o) >= best_value_;
        }
        return false;
    }

    void search_drone(std::size_t u) {
        tick();
        if (u == ins_.drones.size()) {
            leaf();
            return;
        }
        day(u, ins_.drones[u].start_depot, 0.0, 1.0, 0);
    }

    void day(std::size_t u, int at, double clock, double battery, int trips) {
        tick();
        if (at == ins_.drones[u].end_depot) search_drone(u + 1);
        if (trips >= max_trips_) return;

        const double b0 = battery_model_ == BatteryModel::ResetAtDepot ? 1.0 : battery;

        // Pure repositioning hop to another depot: departs without loading.
        for (int e : depot_candidates_) {
            if (e == at) continue;
            const ArcMetrics& arc = m_.at(at, e);
            const double arrive = clock + arc.travel_time_s;
            const double b = b0 - arc.battery_cost;
            if (b < 0.0 || arrive > ins_.horizon_s) continue;
            if (arc.handovers > ins_.thresholds.h_max) continue;
            if (arc.outage_duration_s > ins_.thresholds.o_max_s) continue;
            const double new_dist = total_distance_ + arc.distance_m;
            if (prune_by_incumbent(new_dist, arc.handovers, arc.outage_duration_s)) continue;

            const double saved_dist = total_distance_;
            const double saved_worst = worst_trip_value_;
            total_distance_ = new_dist;
            note_trip_closed(arc.handovers, arc.outage_duration_s);
            work_[u].push_back(Trip{{at, e}});
            day(u, e, arrive, b, trips + 1);
            work_[u].pop_back();
            total_distance_ = saved_dist;
            worst_trip_value_ = saved_worst;
        }

        // Trips with interior nodes: loading at the start depot, then the
        // first interior hop.
        const double depart = clock + ins_.op_times.of(NodeKind::Depot);
        trip_nodes_.push_back(at);
        first_step(u, at, depart, b0, trips);
        trip_nodes_.pop_back();
    }

    void first_step(std::size_t u, int at, double depart, double battery, int trips) {
        for (int v : interior_candidates_) step_to(u, at, v, depart, battery, 0, 0.0, 0, false, trips);
    }

    // Fly one arc from `at` to interior node `v`, then keep extending.
    void step_to(std::size_t u, int at, int v, double depart_at, double battery, int trip_h,
                 double trip_o, int interior_count, bool has_customer, int trips) {
        if (interior_count >= max_interior_) return;
        if (std::find(trip_nodes_.begin(), trip_nodes_.end(), v) != trip_nodes_.end()) return;

        const NodeKind kind = ins_.kind_of(v);
        int customer_idx = -1;
        if (kind == NodeKind::Customer) {
            if (has_customer) return;  // one delivery per trip
            customer_idx = ins_.customer_index(v);
            if (served(customer_idx)) return;
        }

        const ArcMetrics& arc = m_.at(at, v);
        const double arrive = depart_at + arc.travel_time_s;
        double b = battery - arc.battery_cost;
        if (b < 0.0 || arrive > ins_.horizon_s) return;
        const int h = trip_h + arc.handovers;
        const double o = trip_o + arc.outage_duration_s;
        if (h > ins_.thresholds.h_max || o > ins_.thresholds.o_max_s) return;
        const double new_dist = total_distance_ + arc.distance_m;
        if (prune_by_incumbent(new_dist, h, o)) return;

        double depart_v = 0.0;
        if (kind == NodeKind::Customer) {
            const Customer& c = ins_.customers[static_cast<std::size_t>(customer_idx)];
            if (arrive > c.window_end_s) return;
            depart_v = std::max(arrive, c.window_start_s) + c.service_time_s;
        } else {
            depart_v = arrive + ins_.op_times.of(kind);
        }
        if (kind == NodeKind::ChargingStation) b = 1.0;  // swap after the check

        tick();
        const double saved_dist = total_distance_;
        total_distance_ = new_dist;
        trip_nodes_.push_back(v);
        if (customer_idx >= 0) {
            served_mask_ |= 1ull << customer_idx;
            ++served_count_;
        }

        close_trip(u, v, depart_v, b, h, o, trips);
        for (int w : interior_candidates_)
            step_to(u, v, w, depart_v, b, h, o, interior_count + 1,
                    has_customer || customer_idx >= 0, trips);

        if (customer_idx >= 0) {
            served_mask_ &= ~(1ull << customer_idx);
            --served_count_;
        }
        trip_nodes_.pop_back();
        total_distance_ = saved_dist;
    }

    // Return to a depot, sealing the current trip.
    void close_trip(std::size_t u, int at, double depart_at, double battery, int trip_h,
                    double trip_o, int trips) {
        for (int e : depot_candidates_) {
            const ArcMetrics& arc = m_.at(at, e);
            const double arrive = depart_at + arc.travel_time_s;
            const double b = battery - arc.battery_cost;
            if (b < 0.0 || arrive > ins_.horizon_s) continue;
            const int h = trip_h + arc.handovers;
            const double o = trip_o + arc.outage_duration_s;
            if (h > ins_.thresholds.h_max || o > ins_.thresholds.o_max_s) continue;
            const double new_dist = total_distance_ + arc.distance_m;
            if (prune_by_incumbent(new_dist, h, o)) continue;

            const double saved_dist = total_distance_;
            const double saved_worst = worst_trip_value_;
            total_distance_ = new_dist;
            note_trip_closed(h, o);
            Trip trip;
            trip.nodes = trip_nodes_;
            trip.nodes.push_back(e);
            work_[u].push_back(std::move(trip));
            // The follow-up trips start from a clean slate; park the current
            // trip's nodes so sibling closings still see them.
            std::vector<int> parked;
            parked.swap(trip_nodes_);
            day(u, e, arrive, b, trips + 1);
            trip_nodes_.swap(parked);
            work_[u].pop_back();
            total_distance_ = saved_dist;
            worst_trip_value_ = saved_worst;
        }
    }

    void note_trip_closed(int trip_h, double trip_o) {
        if (objective_ == ObjectiveKind::MinmaxHandover)
            worst_trip_value_ = std::max(worst_trip_value_, static_cast<double>(trip_h));
        else if (objective_ == ObjectiveKind::MinmaxOutage)
            worst_trip_value_ = std::max(worst_trip_value_, trip_o);
    }

    double leaf_value() const {
        return objective_ == ObjectiveKind::TotalDistance ? total_distance_ : worst_trip_value_;
    }

    void leaf() {
        if (served_count_ != ins_.customer_count()) return;

        Plan plan;
        plan.trips_by_drone = work_;

        if (collect_) {
            if (collect_->size() >= collect_cap_) throw SearchTooLarge(states_);
            collect_->push_back(std::move(plan));
            return;
        }

        const double value = leaf_value();
        if (have_best_ && value >= best_value_) return;
        EvalResult eval = check_feasibility(plan, ins_, m_, battery_model_);
        if (!eval.feasible())
            throw std::logic_error("enumeration accepted a plan the feasibility checker rejects");
        have_best_ = true;
        best_value_ = value;
        best_plan_ = std::move(plan);
        best_eval_ = std::move(eval);
    }

    const Instance& ins_;
    const MetricMatrix& m_;
    ObjectiveKind objective_;
    BatteryModel battery_model_;
    int max_interior_;
    int max_trips_;
    std::uint64_t budget_;

    std::vector<int> interior_candidates_;
    std::vector<int> depot_candidates_;

    std::uint64_t states_ = 0;
    std::uint64_t served_mask_ = 0;
    int served_count_ = 0;
    std::vector<std::vector<Trip>> work_;
    std::vector<int> trip_nodes_;
    double total_distance_ = 0.0;
    double worst_trip_value_ = 0.0;

    bool have_best_ = false;
    double best_value_ = std::numeric_limits<double>::infinity();
    Plan best_plan_;
    EvalResult best_eval_;

    std::vector<Plan>* collect_ = nullptr;
    std::size_t collect_cap_ = 0;
};

}  // namespace

std::string to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::TotalDistance: return "total_distance";
        case ObjectiveKind::MinmaxHandover: return "minmax_handover";
        case ObjectiveKind::MinmaxOutage: return "minmax_outage";
    }
    throw std::invalid_argument("unknown objective kind");
}

ObjectiveKind objective_kind_from_string(const std::string& text) {
    if (text == "total_distance") return ObjectiveKind::TotalDistance;
    if (text == "minmax_handover") return ObjectiveKind::MinmaxHandover;
    if (text == "minmax_outage") return ObjectiveKind::MinmaxOutage;
    throw std::invalid_argument("unknown objective kind: " + text);
}

void EnumerationBounds::validate(const Instance& instance) const {
    require(max_interior >= 1, "max_interior must be >= 1");
    require(max_trips >= 0, "max_trips must be >= 0");
    require(state_budget >= 1, "state_budget must be >= 1");
    for (int id : node_whitelist)
        require(id >= 0 && id < instance.flyable_count(),
                "whitelist node " + std::to_string(id) + " does not exist");
}

ExactResult enumerate_optimal(const Instance& instance, const MetricMatrix& metrics,
                              const EnumerationBounds& bounds, ObjectiveKind objective,
                              BatteryModel battery_model) {
    Searcher s(instance, metrics, bounds, objective, battery_model);
    return s.run();
}

std::vector<Plan> enumerate_feasible(const Instance& instance, const MetricMatrix& metrics,
                                     const EnumerationBounds& bounds, BatteryModel battery_model,
                                     std::size_t max_plans) {
    std::vector<Plan> plans;
    Searcher s(instance, metrics, bounds, ObjectiveKind::TotalDistance, battery_model);
    s.set_collector(&plans, max_plans);
    s.run();
    return plans;
}

}  // namespace cddp
