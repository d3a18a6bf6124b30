#include "cddp/mps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cddp {

namespace {

// 12 significant digits, never exponent notation: %.12g first, and when that
// falls back to scientific form, expand the mantissa by hand.
std::string fmt_number(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    if (std::strpbrk(buf, "eE") == nullptr) return buf;

    std::snprintf(buf, sizeof buf, "%.11e", v);  // d.ddddddddddd0e+xx
    const std::string sci = buf;
    const std::size_t epos = sci.find('e');
    std::string digits = sci.substr(0, epos);
    const int exponent = std::stoi(sci.substr(epos + 1));
    std::string sign;
    if (digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    digits.erase(digits.find('.'), 1);  // 12 bare digits, point after the first

    std::string out;
    if (exponent >= static_cast<int>(digits.size()) - 1) {
        out = digits + std::string(static_cast<std::size_t>(exponent) - digits.size() + 1, '0');
    } else if (exponent >= 0) {
        out = digits.substr(0, static_cast<std::size_t>(exponent) + 1) + "." +
              digits.substr(static_cast<std::size_t>(exponent) + 1);
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent) - 1, '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return sign + out;
}

// Operation/service time spent at a node before flying on.
double dwell_s(const Instance& ins, int id) {
    const NodeKind kind = ins.kind_of(id);
    if (kind == NodeKind::Customer)
        return ins.customers[static_cast<std::size_t>(ins.customer_index(id))].service_time_s;
    return ins.op_times.of(kind);
}

// Canonical column layout shared by the export and the plan-to-assignment
// mapper; both sides must agree on names and order byte for byte.
struct Shape {
    explicit Shape(const Instance& ins)
        : nf(ins.flyable_count()), nu(ins.drone_count()), nc(ins.customer_count()) {
        for (int id = 0; id < nf; ++id) {
            if (ins.kind_of(id) == NodeKind::Depot) {
                depot_pos.push_back(static_cast<int>(depots.size()));
                depots.push_back(id);
                nondepot_pos.push_back(-1);
            } else {
                nondepot_pos.push_back(static_cast<int>(nondepots.size()));
                nondepots.push_back(id);
                depot_pos.push_back(-1);
            }
        }
        narcs = nf * (nf - 1);
        n_x = static_cast<std::size_t>(narcs) * slots();
        n_p = slots();
        n_y = static_cast<std::size_t>(nf) * slots();
        n_sl = depots.size() * slots();
        n_sv = nondepots.size() * slots();
        off_p = n_x;
        off_y = off_p + n_p;
        off_sl = off_y + n_y;
        off_sa = off_sl + n_sl;
        off_sv = off_sa + n_sl;
        total = off_sv + n_sv;
    }

    std::size_t slots() const { return static_cast<std::size_t>(nu) * nc; }
    std::size_t slot(int u, int k) const { return static_cast<std::size_t>(u) * nc + k; }
    int arc_index(int i, int j) const { return i * (nf - 1) + (j > i ? j - 1 : j); }

    std::size_t x(int i, int j, int u, int k) const {
        return static_cast<std::size_t>(arc_index(i, j)) * slots() + slot(u, k);
    }
    std::size_t p(int u, int k) const { return off_p + slot(u, k); }
    std::size_t y(int i, int u, int k) const {
        return off_y + static_cast<std::size_t>(i) * slots() + slot(u, k);
    }
    std::size_t sl(int depot_id, int u, int k) const {
        return off_sl + static_cast<std::size_t>(depot_pos[static_cast<std::size_t>(depot_id)]) *
                            slots() +
               slot(u, k);
    }
    std::size_t sa(int depot_id, int u, int k) const {
        return off_sa + static_cast<std::size_t>(depot_pos[static_cast<std::size_t>(depot_id)]) *
                            slots() +
               slot(u, k);
    }
    std::size_t sv(int node_id, int u, int k) const {
        return off_sv + static_cast<std::size_t>(
                            nondepot_pos[static_cast<std::size_t>(node_id)]) *
                            slots() +
               slot(u, k);
    }

    // Column names, in the same index order as above.
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(total);
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j) {
                if (i == j) continue;
                for (int u = 0; u < nu; ++u)
                    for (int k = 0; k < nc; ++k)
                        out.push_back("x_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                      std::to_string(u) + "_" + std::to_string(k));
            }
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k)
                out.push_back("p_" + std::to_string(u) + "_" + std::to_string(k));
        for (int i = 0; i < nf; ++i)
            for (int u = 0; u < nu; ++u)
                for (int k = 0; k < nc; ++k)
                    out.push_back("y_" + std::to_string(i) + "_" + std::to_string(u) + "_" +
                                  std::to_string(k));
        for (const char* prefix : {"sL_", "sA_"})
            for (int d : depots)
                for (int u = 0; u < nu; ++u)
                    for (int k = 0; k < nc; ++k)
                        out.push_back(prefix + std::to_string(d) + "_" + std::to_string(u) + "_" +
                                      std::to_string(k));
        for (int i : nondepots)
            for (int u = 0; u < nu; ++u)
                for (int k = 0; k < nc; ++k)
                    out.push_back("sV_" + std::to_string(i) + "_" + std::to_string(u) + "_" +
                                  std::to_string(k));
        return out;
    }

    int nf, nu, nc, narcs = 0;
    std::vector<int> depots, nondepots;
    std::vector<int> depot_pos, nondepot_pos;  // id -> position, -1 elsewhere
    std::size_t n_x = 0, n_p = 0, n_y = 0, n_sl = 0, n_sv = 0;
    std::size_t off_p = 0, off_y = 0, off_sl = 0, off_sa = 0, off_sv = 0, total = 0;
};

struct Row {
    std::string name;
    char type;  // 'L' or 'E'
    double rhs;
};

class Builder {
public:
    explicit Builder(const Shape& shape) : shape_(shape), entries_(shape.total) {}

    int add_row(std::string name, char type, double rhs) {
        rows_.push_back({std::move(name), type, rhs});
        return static_cast<int>(rows_.size()) - 1;
    }
    void put(std::size_t col, int row, double coeff) {
        if (coeff != 0.0) entries_[col].push_back({row, coeff});
    }
    void objective(std::size_t col, double coeff) {
        if (coeff != 0.0) obj_.push_back({col, coeff});
    }

    std::string render(const std::string& model_name) const {
        const std::vector<std::string> names = shape_.names();
        std::string out;
        out.reserve(entries_.size() * 40 + rows_.size() * 20);
        out += "NAME " + model_name + "\n";
        out += "ROWS\n N COST\n";
        for (const Row& r : rows_) {
            out += ' ';
            out += r.type;
            out += ' ';
            out += r.name;
            out += '\n';
        }

        // Objective coefficients, keyed by column.
        std::vector<double> obj(entries_.size(), 0.0);
        for (const auto& [col, coeff] : obj_) obj[col] = coeff;

        out += "COLUMNS\n";
        for (std::size_t col = 0; col < entries_.size(); ++col) {
            if (obj[col] != 0.0)
                out += " " + names[col] + " COST " + fmt_number(obj[col]) + "\n";
            for (const auto& [row, coeff] : entries_[col])
                out += " " + names[col] + " " + rows_[static_cast<std::size_t>(row)].name + " " +
                       fmt_number(coeff) + "\n";
        }

        out += "RHS\n";
        for (const Row& r : rows_)
            if (r.rhs != 0.0) out += " RHS " + r.name + " " + fmt_number(r.rhs) + "\n";

        out += "BOUNDS\n";
        for (std::size_t col = 0; col < shape_.n_x + shape_.n_p; ++col)
            out += " BV BND " + names[col] + "\n";
        for (std::size_t col = shape_.off_y; col < shape_.off_y + shape_.n_y; ++col)
            out += " UP BND " + names[col] + " 1\n";
        out += "ENDATA\n";
        return out;
    }

private:
    const Shape& shape_;
    std::vector<Row> rows_;
    std::vector<std::vector<std::pair<int, double>>> entries_;  // per column
    std::vector<std::pair<std::size_t, double>> obj_;
};

std::string tag(std::initializer_list<int> parts) {
    std::string out;
    for (int p : parts) {
        out += '_';
        out += std::to_string(p);
    }
    return out;
}

}  // namespace

double mps_big_m(const Instance& ins, const MetricMatrix& m) {
    double max_w = std::max({ins.op_times.depot_s, ins.op_times.charging_station_s,
                             ins.op_times.waypoint_s});
    for (const Customer& c : ins.customers) max_w = std::max(max_w, c.service_time_s);
    double max_t = 0.0;
    for (int i = 0; i < ins.flyable_count(); ++i)
        for (int j = 0; j < ins.flyable_count(); ++j)
            if (i != j) max_t = std::max(max_t, m.at(i, j).travel_time_s);
    return ins.horizon_s + max_w + max_t;
}

std::string export_mps(const Instance& ins, const MetricMatrix& m, const MpsConfig& config) {
    if (ins.customer_count() == 0)
        throw std::invalid_argument("the model needs at least one customer");
    const Shape shape(ins);
    if (shape.total > config.max_columns)
        throw std::runtime_error("mps export needs " + std::to_string(shape.total) +
                                 " columns, above the limit of " +
                                 std::to_string(config.max_columns));

    const double big_m = mps_big_m(ins, m);
    const int nf = shape.nf, nu = shape.nu, nc = shape.nc;
    Builder b(shape);

    auto each_arc = [&](auto&& fn) {
        for (int i = 0; i < nf; ++i)
            for (int j = 0; j < nf; ++j)
                if (i != j) fn(i, j);
    };

    // Per-trip handover and outage caps; unlimited thresholds need no rows.
    if (std::isfinite(ins.thresholds.h_max)) {
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const int row = b.add_row("HCAP" + tag({u, k}), 'L', ins.thresholds.h_max);
                each_arc([&](int i, int j) {
                    b.put(shape.x(i, j, u, k), row, static_cast<double>(m.at(i, j).handovers));
                });
            }
    }
    if (std::isfinite(ins.thresholds.o_max_s)) {
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const int row = b.add_row("OCAP" + tag({u, k}), 'L', ins.thresholds.o_max_s);
                each_arc([&](int i, int j) {
                    b.put(shape.x(i, j, u, k), row, m.at(i, j).outage_duration_s);
                });
            }
    }

    // Every customer is flown into exactly once, over all drones and trips.
    for (const Customer& c : ins.customers) {
        const int row = b.add_row("VISIT" + tag({c.node_id}), 'E', 1.0);
        for (int i = 0; i < nf; ++i) {
            if (i == c.node_id) continue;
            for (int u = 0; u < nu; ++u)
                for (int k = 0; k < nc; ++k) b.put(shape.x(i, c.node_id, u, k), row, 1.0);
        }
    }

    // Flow balance at non-depot nodes.
    for (int i : shape.nondepots)
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const int row = b.add_row("FLOW" + tag({i, u, k}), 'E', 0.0);
                for (int j = 0; j < nf; ++j) {
                    if (j == i) continue;
                    b.put(shape.x(i, j, u, k), row, 1.0);
                    b.put(shape.x(j, i, u, k), row, -1.0);
                }
            }

    // A drone's first trip leaves its start depot; a drone's last active
    // trip arrives at its end depot.
    for (int u = 0; u < nu; ++u) {
        const Drone& d = ins.drones[static_cast<std::size_t>(u)];
        const int row = b.add_row("START" + tag({u}), 'L', 0.0);
        b.put(shape.p(u, 0), row, 1.0);
        for (int j = 0; j < nf; ++j)
            if (j != d.start_depot) b.put(shape.x(d.start_depot, j, u, 0), row, -1.0);

        for (int k = 0; k + 1 < nc; ++k) {
            const int r2 = b.add_row("ENDDEP" + tag({u, k}), 'L', 0.0);
            b.put(shape.p(u, k), r2, 1.0);
            b.put(shape.p(u, k + 1), r2, -1.0);
            for (int j = 0; j < nf; ++j)
                if (j != d.end_depot) b.put(shape.x(j, d.end_depot, u, k), r2, -1.0);
        }
        const int r3 = b.add_row("ENDLAST" + tag({u}), 'L', 0.0);
        b.put(shape.p(u, nc - 1), r3, 1.0);
        for (int j = 0; j < nf; ++j)
            if (j != d.end_depot) b.put(shape.x(j, d.end_depot, u, nc - 1), r3, -1.0);
    }

    // Arcs only on assigned trips; trips activate in order.
    each_arc([&](int i, int j) {
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const int row = b.add_row("ARCP" + tag({i, j, u, k}), 'L', 0.0);
                b.put(shape.x(i, j, u, k), row, 1.0);
                b.put(shape.p(u, k), row, -1.0);
            }
    });
    for (int u = 0; u < nu; ++u)
        for (int k = 0; k + 1 < nc; ++k) {
            const int row = b.add_row("SEQ" + tag({u, k}), 'L', 0.0);
            b.put(shape.p(u, k + 1), row, 1.0);
            b.put(shape.p(u, k), row, -1.0);
        }

    // Per trip: at most one departure depot, one arrival depot, one customer.
    for (int u = 0; u < nu; ++u)
        for (int k = 0; k < nc; ++k) {
            const int leave = b.add_row("ONELEAVE" + tag({u, k}), 'L', 1.0);
            const int arrive = b.add_row("ONEARR" + tag({u, k}), 'L', 1.0);
            for (int d : shape.depots)
                for (int j = 0; j < nf; ++j) {
                    if (j == d) continue;
                    b.put(shape.x(d, j, u, k), leave, 1.0);
                    b.put(shape.x(j, d, u, k), arrive, 1.0);
                }
            const int cust = b.add_row("ONECUST" + tag({u, k}), 'L', 1.0);
            for (const Customer& c : ins.customers)
                for (int j = 0; j < nf; ++j)
                    if (j != c.node_id) b.put(shape.x(j, c.node_id, u, k), cust, 1.0);
        }

    // Consecutive trips chain through the same depot.
    for (int i : shape.depots)
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k + 1 < nc; ++k) {
                const int row = b.add_row("CHAIN" + tag({i, u, k}), 'L', 0.0);
                for (int j = 0; j < nf; ++j) {
                    if (j == i) continue;
                    b.put(shape.x(i, j, u, k + 1), row, 1.0);
                    b.put(shape.x(j, i, u, k), row, -1.0);
                }
            }

    // Battery recursion: flying (i,j) on trip k pins y_j to the charge at i
    // minus the arc's cost, with a fresh pack when i is a charging station.
    // The upper legs scale their activation coefficient so an unused arc
    // never constrains anything, whatever the arc cost.
    each_arc([&](int i, int j) {
        const bool swap = ins.kind_of(i) == NodeKind::ChargingStation;
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const double c = m.at(i, j).battery_cost;
                if (swap) {
                    const int lo = b.add_row("BCSL" + tag({i, j, u, k}), 'L', c);
                    b.put(shape.x(i, j, u, k), lo, 1.0);
                    b.put(shape.y(j, u, k), lo, -1.0);
                    const int hi = b.add_row("BCSU" + tag({i, j, u, k}), 'L', 1.0);
                    b.put(shape.x(i, j, u, k), hi, c);
                    b.put(shape.y(j, u, k), hi, 1.0);
                } else {
                    const int lo = b.add_row("BATL" + tag({i, j, u, k}), 'L', 1.0 + c);
                    b.put(shape.x(i, j, u, k), lo, 1.0);
                    b.put(shape.y(i, u, k), lo, 1.0);
                    b.put(shape.y(j, u, k), lo, -1.0);
                    const int hi = b.add_row("BATU" + tag({i, j, u, k}), 'L', 1.0);
                    b.put(shape.x(i, j, u, k), hi, 1.0 + c);
                    b.put(shape.y(i, u, k), hi, -1.0);
                    b.put(shape.y(j, u, k), hi, 1.0);
                }
            }
    });

    // Carry semantics: the charge a trip ends with at a depot is the charge
    // the next trip starts with there, and day one starts on a full pack.
    if (config.battery_model == BatteryModel::CarryAcrossTrips) {
        for (int i : shape.depots)
            for (int u = 0; u < nu; ++u)
                for (int k = 0; k + 1 < nc; ++k) {
                    const int up = b.add_row("BLNKU" + tag({i, u, k}), 'L', 1.0);
                    b.put(shape.y(i, u, k + 1), up, 1.0);
                    b.put(shape.y(i, u, k), up, -1.0);
                    const int dn = b.add_row("BLNKL" + tag({i, u, k}), 'L', 1.0);
                    b.put(shape.y(i, u, k), dn, 1.0);
                    b.put(shape.y(i, u, k + 1), dn, -1.0);
                    for (int j = 0; j < nf; ++j) {
                        if (j == i) continue;
                        b.put(shape.x(j, i, u, k), up, 1.0);
                        b.put(shape.x(j, i, u, k), dn, 1.0);
                    }
                }
        for (int u = 0; u < nu; ++u) {
            const Drone& d = ins.drones[static_cast<std::size_t>(u)];
            const int row = b.add_row("BINIT" + tag({u}), 'L', 0.0);
            b.put(shape.y(d.start_depot, u, 0), row, -1.0);
            for (int j = 0; j < nf; ++j)
                if (j != d.start_depot) b.put(shape.x(d.start_depot, j, u, 0), row, 1.0);
        }
    }

    // Visited customers are served inside their window.
    for (const Customer& c : ins.customers)
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const int lo =
                    b.add_row("TWLO" + tag({c.node_id, u, k}), 'L', big_m - c.window_start_s);
                const int hi =
                    b.add_row("TWUP" + tag({c.node_id, u, k}), 'L', big_m + c.window_end_s);
                for (int j = 0; j < nf; ++j) {
                    if (j == c.node_id) continue;
                    b.put(shape.x(j, c.node_id, u, k), lo, big_m);
                    b.put(shape.x(j, c.node_id, u, k), hi, big_m);
                }
                b.put(shape.sv(c.node_id, u, k), lo, -1.0);
                b.put(shape.sv(c.node_id, u, k), hi, 1.0);
            }

    // The next trip cannot leave before the previous one arrived.
    for (int i : shape.depots)
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k + 1 < nc; ++k) {
                const int row = b.add_row("TSTART" + tag({i, u, k}), 'L', big_m);
                b.put(shape.sa(i, u, k), row, 1.0);
                b.put(shape.sl(i, u, k + 1), row, -1.0);
                b.put(shape.p(u, k + 1), row, big_m);
            }

    // Time propagation along flown arcs: depot to first node, between
    // non-depot nodes, last node back to a depot, and depot-to-depot hops
    // (which skip loading entirely).
    each_arc([&](int i, int j) {
        const bool i_dep = shape.depot_pos[static_cast<std::size_t>(i)] >= 0;
        const bool j_dep = shape.depot_pos[static_cast<std::size_t>(j)] >= 0;
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k) {
                const double t = m.at(i, j).travel_time_s;
                if (i_dep && !j_dep) {
                    const int row = b.add_row("TFIRST" + tag({i, j, u, k}), 'L',
                                              big_m - dwell_s(ins, i) - t);
                    b.put(shape.sl(i, u, k), row, 1.0);
                    b.put(shape.sv(j, u, k), row, -1.0);
                    b.put(shape.x(i, j, u, k), row, big_m);
                } else if (!i_dep && !j_dep) {
                    const int row = b.add_row("TMID" + tag({i, j, u, k}), 'L',
                                              big_m - dwell_s(ins, i) - t);
                    b.put(shape.sv(i, u, k), row, 1.0);
                    b.put(shape.sv(j, u, k), row, -1.0);
                    b.put(shape.x(i, j, u, k), row, big_m);
                } else if (!i_dep && j_dep) {
                    const int row = b.add_row("TENDN" + tag({i, j, u, k}), 'L',
                                              big_m - dwell_s(ins, i) - t);
                    b.put(shape.sv(i, u, k), row, 1.0);
                    b.put(shape.sa(j, u, k), row, -1.0);
                    b.put(shape.x(i, j, u, k), row, big_m);
                } else {
                    const int row = b.add_row("TENDD" + tag({i, j, u, k}), 'L', big_m - t);
                    b.put(shape.sl(i, u, k), row, 1.0);
                    b.put(shape.sa(j, u, k), row, -1.0);
                    b.put(shape.x(i, j, u, k), row, big_m);
                }
            }
    });

    // Objective: meters flown.
    each_arc([&](int i, int j) {
        for (int u = 0; u < nu; ++u)
            for (int k = 0; k < nc; ++k)
                b.objective(shape.x(i, j, u, k), m.at(i, j).distance_m);
    });

    return b.render("CDDP_" + instance_hash(ins));
}

std::vector<std::pair<std::string, double>> assignment_from_plan(const Instance& ins,
                                                                 const MetricMatrix& m,
                                                                 const Plan& plan,
                                                                 BatteryModel battery_model) {
    const Shape shape(ins);
    if (plan.trips_by_drone.size() != static_cast<std::size_t>(shape.nu))
        throw std::runtime_error("plan and instance disagree on the drone count");

    std::vector<double> v(shape.total, 0.0);
    // Unused battery slots default to a full pack; every activation
    // coefficient tolerates that.
    for (std::size_t col = shape.off_y; col < shape.off_y + shape.n_y; ++col) v[col] = 1.0;

    const Schedule schedule = simulate_schedule(plan, ins, m, battery_model);

    for (int u = 0; u < shape.nu; ++u) {
        const auto& trips = plan.trips_by_drone[static_cast<std::size_t>(u)];
        if (trips.size() > static_cast<std::size_t>(shape.nc))
            throw std::runtime_error("drone " + std::to_string(u) + " flies " +
                                     std::to_string(trips.size()) + " trips but the model has " +
                                     std::to_string(shape.nc) + " trip slots");
        for (std::size_t k = 0; k < trips.size(); ++k) {
            const std::vector<int>& nodes = trips[k].nodes;
            if (nodes.size() < 2)
                throw std::runtime_error("trip " + std::to_string(k) + " of drone " +
                                         std::to_string(u) + " has fewer than two nodes");
            if (nodes.front() == nodes.back())
                throw std::runtime_error(
                    "trip " + std::to_string(k) + " of drone " + std::to_string(u) +
                    " starts and ends at the same depot; the battery rows keep a single charge "
                    "variable per node and trip, so such a loop cannot be represented");
            if (std::set<int>(nodes.begin(), nodes.end()).size() != nodes.size())
                throw std::runtime_error("trip " + std::to_string(k) + " of drone " +
                                         std::to_string(u) +
                                         " revisits a node; the model keeps one time variable "
                                         "per node and trip");

            v[shape.p(u, static_cast<int>(k))] = 1.0;
            for (std::size_t t = 0; t + 1 < nodes.size(); ++t)
                v[shape.x(nodes[t], nodes[t + 1], u, static_cast<int>(k))] = 1.0;

            const TripSchedule& ts = schedule.by_drone[static_cast<std::size_t>(u)][k];
            const NodeEvent& start = ts.events.front();
            v[shape.sl(nodes.front(), u, static_cast<int>(k))] = ts.leave_s;
            v[shape.y(nodes.front(), u, static_cast<int>(k))] =
                battery_model == BatteryModel::ResetAtDepot ? 1.0 : start.battery_on_arrival;

            for (std::size_t t = 1; t + 1 < nodes.size(); ++t) {
                const NodeEvent& ev = ts.events[t];
                double service_start = ev.arrival_s;
                if (ins.kind_of(nodes[t]) == NodeKind::Customer) {
                    const Customer& c = ins.customers[static_cast<std::size_t>(
                        ins.customer_index(nodes[t]))];
                    service_start = std::max(ev.arrival_s, c.window_start_s);
                }
                v[shape.sv(nodes[t], u, static_cast<int>(k))] = service_start;
                v[shape.y(nodes[t], u, static_cast<int>(k))] = ev.battery_on_arrival;
            }

            const NodeEvent& last = ts.events.back();
            v[shape.sa(nodes.back(), u, static_cast<int>(k))] = last.arrival_s;
            v[shape.y(nodes.back(), u, static_cast<int>(k))] = last.battery_on_arrival;
        }

        // Under carry semantics the linking rows tie the slot right after the
        // final trip to the charge the drone parked with; later slots are free.
        if (battery_model == BatteryModel::CarryAcrossTrips && !trips.empty() &&
            trips.size() < static_cast<std::size_t>(shape.nc)) {
            const TripSchedule& ts =
                schedule.by_drone[static_cast<std::size_t>(u)][trips.size() - 1];
            v[shape.y(trips.back().nodes.back(), u, static_cast<int>(trips.size()))] =
                ts.events.back().battery_on_arrival;
        }
    }

    const std::vector<std::string> names = shape.names();
    std::vector<std::pair<std::string, double>> out;
    out.reserve(shape.total);
    for (std::size_t col = 0; col < shape.total; ++col) out.emplace_back(names[col], v[col]);
    return out;
}

std::string solution_file_text(const std::vector<std::pair<std::string, double>>& assignment) {
    std::string out;
    out.reserve(assignment.size() * 24);
    char buf[64];
    for (const auto& [name, value] : assignment) {
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out += name;
        out += ' ';
        out += buf;
        out += '\n';
    }
    return out;
}

std::map<std::string, double> parse_solution_text(const std::string& text) {
    std::istringstream in(text);
    std::map<std::string, double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string name;
        if (!(ss >> name) || name[0] == '#') continue;
        double value = 0.0;
        std::string extra;
        if (!(ss >> value) || (ss >> extra))
            throw std::runtime_error("unparseable solution line " + std::to_string(lineno) +
                                     ": " + line);
        values[name] = value;
    }
    return values;
}

std::map<std::string, double> parse_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_solution_text(text.str());
}

SolutionVerification verify_solution_values(const Instance& ins, const MetricMatrix& m,
                                            const std::map<std::string, double>& values,
                                            double bound, BatteryModel battery_model) {
    const int nu = ins.drone_count();
    const int nc = ins.customer_count();

    // arcs[u][k] -> successor map.
    std::vector<std::vector<std::map<int, int>>> succ(
        static_cast<std::size_t>(nu),
        std::vector<std::map<int, int>>(static_cast<std::size_t>(nc)));
    for (const auto& [name, value] : values) {
        if (name.rfind("x_", 0) != 0 || value <= 0.5) continue;
        int i = 0, j = 0, u = 0, k = 0;
        if (std::sscanf(name.c_str(), "x_%d_%d_%d_%d", &i, &j, &u, &k) != 4)
            throw std::runtime_error("malformed variable name: " + name);
        if (i < 0 || i >= ins.flyable_count() || j < 0 || j >= ins.flyable_count() || u < 0 ||
            u >= nu || k < 0 || k >= nc)
            throw std::runtime_error("variable indexes off the instance: " + name);
        auto [it, fresh] = succ[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)]
                               .emplace(i, j);
        if (!fresh)
            throw std::runtime_error("node " + std::to_string(i) +
                                     " has two outgoing arcs on drone " + std::to_string(u) +
                                     " trip " + std::to_string(k));
    }

    SolutionVerification report;
    report.plan.trips_by_drone.resize(static_cast<std::size_t>(nu));
    for (int u = 0; u < nu; ++u) {
        for (int k = 0; k < nc; ++k) {
            const auto& edges = succ[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)];
            if (edges.empty()) continue;
            // The trip starts at the unique depot with an outgoing arc.
            int start = -1;
            for (const auto& [from, to] : edges) {
                if (ins.kind_of(from) != NodeKind::Depot) continue;
                if (start != -1)
                    throw std::runtime_error("two depots leave on drone " + std::to_string(u) +
                                             " trip " + std::to_string(k));
                start = from;
            }
            if (start == -1)
                throw std::runtime_error("no depot leaves on drone " + std::to_string(u) +
                                         " trip " + std::to_string(k));
            Trip trip;
            trip.nodes.push_back(start);
            int at = start;
            for (std::size_t steps = 0; steps <= edges.size(); ++steps) {
                const auto it = edges.find(at);
                if (it == edges.end())
                    throw std::runtime_error("trip breaks at node " + std::to_string(at) +
                                             " on drone " + std::to_string(u) + " trip " +
                                             std::to_string(k));
                at = it->second;
                trip.nodes.push_back(at);
                if (ins.kind_of(at) == NodeKind::Depot) break;
            }
            if (ins.kind_of(at) != NodeKind::Depot || trip.nodes.size() != edges.size() + 1)
                throw std::runtime_error("arcs do not form one depot-to-depot walk on drone " +
                                         std::to_string(u) + " trip " + std::to_string(k));
            report.plan.trips_by_drone[static_cast<std::size_t>(u)].push_back(std::move(trip));
        }
    }

    report.eval = check_feasibility(report.plan, ins, m, battery_model);
    report.distance_m = report.eval.total_distance_m;
    report.gap = bound > 0.0 ? (report.distance_m - bound) / bound : 0.0;
    return report;
}

}  // namespace cddp
