#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <vector>

#include "cddp/arc_metrics.hpp"
#include "cddp/comm_model.hpp"

using namespace cddp;

namespace {

// Two stations 1 km apart; the corridor between them crosses one cell
// boundary and dips below SE = 2 around the midpoint.
CommNetwork corridor_network() {
    return CommNetwork({{0, {0.0, 0.0}, 46.0}, {1, {1000.0, 0.0}, 46.0}}, CommParams{});
}

}  // namespace

TEST_CASE("sample_path returns R+1 evenly spaced points with exact endpoints") {
    const std::vector<Point2> pts = sample_path({0.0, 0.0}, {4.0, 0.0}, 4);
    REQUIRE(pts.size() == 5);
    for (int i = 0; i <= 4; ++i) {
        CHECK(pts[static_cast<std::size_t>(i)].x == doctest::Approx(static_cast<double>(i)));
        CHECK(pts[static_cast<std::size_t>(i)].y == 0.0);
    }
    CHECK(pts.front().x == 0.0);
    CHECK(pts.back().x == 4.0);
    CHECK_THROWS_AS(sample_path({0, 0}, {1, 1}, 0), std::invalid_argument);
}

TEST_CASE("corridor arc between two stations: one handover, frozen outage") {
    CommNetwork net = corridor_network();
    MetricConfig cfg;  // R = 100, 15 m/s, 15 km battery range
    MetricMatrix m = build_metric_matrix(
        std::vector<Point2>{{0.0, 0.0}, {1000.0, 0.0}}, net, cfg);

    const ArcMetrics& arc = m.at(0, 1);
    CHECK(arc.distance_m == doctest::Approx(1000.0));
    CHECK(arc.travel_time_s == doctest::Approx(1000.0 / 15.0));
    CHECK(arc.battery_cost == doctest::Approx(1000.0 / 15000.0));
    CHECK(arc.handovers == 1);
    // 19 of the 101 sample points fall below the SE threshold.
    CHECK(arc.outage_prob == doctest::Approx(19.0 / 101.0).epsilon(1e-15));
    CHECK(arc.outage_duration_s == doctest::Approx(12.541254125412541).epsilon(1e-12));
}

TEST_CASE("arc metrics are symmetric in direction") {
    CommNetwork net = corridor_network();
    const std::vector<Point2> nodes{{0.0, 0.0}, {1000.0, 0.0}, {300.0, 400.0}, {950.0, 120.0}};
    MetricMatrix m = build_metric_matrix(nodes, net, MetricConfig{});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const ArcMetrics& a = m.at(i, j);
            const ArcMetrics& b = m.at(j, i);
            CHECK(a.distance_m == b.distance_m);
            CHECK(a.travel_time_s == b.travel_time_s);
            CHECK(a.battery_cost == b.battery_cost);
            CHECK(a.handovers == b.handovers);
            CHECK(a.outage_prob == b.outage_prob);
            CHECK(a.outage_duration_s == b.outage_duration_s);
        }
    }
}

TEST_CASE("zero-length arcs cost nothing") {
    CommNetwork net = corridor_network();
    MetricMatrix m = build_metric_matrix(
        std::vector<Point2>{{100.0, 50.0}, {100.0, 50.0}}, net, MetricConfig{});
    const ArcMetrics& arc = m.at(0, 1);
    CHECK(arc.distance_m == 0.0);
    CHECK(arc.travel_time_s == 0.0);
    CHECK(arc.battery_cost == 0.0);
    CHECK(arc.handovers == 0);
    CHECK(arc.outage_prob == 0.0);
    CHECK(m.at(0, 0).distance_m == 0.0);
}

TEST_CASE("outage threshold comparison is strict") {
    // Points exactly at the threshold do not count as outage.
    std::vector<double> se{2.0, 2.0, 2.0};
    CHECK(outage_probability(se, 2.0) == 0.0);
    se = {1.9999999, 2.0, 2.1};
    CHECK(outage_probability(se, 2.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("handover_count counts serving-id changes") {
    CHECK(handover_count(std::vector<int>{0, 0, 0}) == 0);
    CHECK(handover_count(std::vector<int>{0, 1, 0, 1}) == 3);
    CHECK(handover_count(std::vector<int>{2}) == 0);
    CHECK(handover_count(std::vector<int>{}) == 0);
    CHECK(handover_count(std::vector<int>{0, 0, 1, 1, 2}) == 2);
}

TEST_CASE("metric matrix sidecar cache round-trips and rejects stale keys") {
    CommNetwork net = corridor_network();
    const std::vector<Point2> nodes{{0.0, 0.0}, {1000.0, 0.0}, {431.7, 210.9}};
    MetricConfig cfg;
    MetricMatrix m = build_metric_matrix(nodes, net, cfg);

    const std::string path = "metrics_cache_test.tmp";
    save_metric_matrix(m, "abc123", path);

    MetricMatrix loaded;
    REQUIRE(load_metric_matrix(path, "abc123", cfg.r_segments, 3, loaded));
    REQUIRE(loaded.node_count() == 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(loaded.at(i, j).distance_m == m.at(i, j).distance_m);
            CHECK(loaded.at(i, j).travel_time_s == m.at(i, j).travel_time_s);
            CHECK(loaded.at(i, j).battery_cost == m.at(i, j).battery_cost);
            CHECK(loaded.at(i, j).handovers == m.at(i, j).handovers);
            CHECK(loaded.at(i, j).outage_prob == m.at(i, j).outage_prob);
            CHECK(loaded.at(i, j).outage_duration_s == m.at(i, j).outage_duration_s);
        }
    }

    MetricMatrix stale;
    CHECK_FALSE(load_metric_matrix(path, "zzz999", cfg.r_segments, 3, stale));
    CHECK_FALSE(load_metric_matrix(path, "abc123", cfg.r_segments + 1, 3, stale));
    CHECK_FALSE(load_metric_matrix(path, "abc123", cfg.r_segments, 4, stale));
    CHECK_FALSE(load_metric_matrix("does_not_exist.tmp", "abc123", cfg.r_segments, 3, stale));
    std::remove(path.c_str());
}

TEST_CASE("build_metric_matrix validates its configuration") {
    CommNetwork net = corridor_network();
    MetricConfig bad;
    bad.speed_mps = 0.0;
    CHECK_THROWS_AS(build_metric_matrix(std::vector<Point2>{{0, 0}, {1, 1}}, net, bad),
                    std::invalid_argument);
    bad = MetricConfig{};
    bad.r_segments = 0;
    CHECK_THROWS_AS(build_metric_matrix(std::vector<Point2>{{0, 0}, {1, 1}}, net, bad),
                    std::invalid_argument);
    bad = MetricConfig{};
    bad.battery_range_m = -5.0;
    CHECK_THROWS_AS(build_metric_matrix(std::vector<Point2>{{0, 0}, {1, 1}}, net, bad),
                    std::invalid_argument);
}
