#include <doctest.h>

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "cddp/instance.hpp"
#include "helpers.hpp"

using namespace cddp;

TEST_CASE("instance JSON round trip preserves everything") {
    Instance ins = testing::mini_instance();
    ins.thresholds.h_max = 3.0;  // keep one finite, one infinite limit
    ins.validate();

    const std::string text = instance_to_json(ins);
    Instance back = instance_from_json(text);
    CHECK(instances_equal(ins, back));
    CHECK(instance_hash(ins) == instance_hash(back));
}

TEST_CASE("instance file save/load round trip") {
    Instance ins = testing::mini_instance();
    const std::string path = "instance_roundtrip_test.tmp";
    save_instance(ins, path);
    Instance back = load_instance(path);
    CHECK(instances_equal(ins, back));
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_instance("no_such_file.json"), std::runtime_error);
}

TEST_CASE("disabled limits serialize as null and read back as infinity") {
    Instance ins = testing::mini_instance();
    const std::string text = instance_to_json(ins);
    CHECK(text.find("\"h_max\": null") != std::string::npos);
    Instance back = instance_from_json(text);
    CHECK(std::isinf(back.thresholds.h_max));
    CHECK(std::isinf(back.thresholds.o_max_s));

    ins.thresholds.o_max_s = 120.0;
    Instance finite = instance_from_json(instance_to_json(ins));
    CHECK(finite.thresholds.o_max_s == 120.0);
}

TEST_CASE("parse errors name the missing field") {
    Instance ins = testing::mini_instance();
    std::string text = instance_to_json(ins);
    const std::string needle = "\"horizon_s\"";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"horizon_zzz\"");
    try {
        instance_from_json(text);
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("horizon_s") != std::string::npos);
    }
}

TEST_CASE("unknown node kinds are rejected") {
    CHECK_THROWS_AS(node_kind_from_string("balloon"), std::invalid_argument);
    CHECK(node_kind_from_string("charging_station") == NodeKind::ChargingStation);
    CHECK(std::string(to_string(NodeKind::Waypoint)) == "waypoint");
}

TEST_CASE("validation enforces the label ordering") {
    Instance ins = testing::mini_instance();
    std::swap(ins.nodes[1], ins.nodes[2]);  // customer before second depot
    ins.nodes[1].id = 1;
    ins.nodes[2].id = 2;
    ins.customers[0].node_id = 1;
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);
}

TEST_CASE("validation rejects broken references and ranges") {
    Instance ins = testing::mini_instance();
    ins.drones[0].end_depot = 2;  // a customer node
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);

    ins = testing::mini_instance();
    ins.customers[0].window_end_s = ins.horizon_s + 1.0;
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);

    ins = testing::mini_instance();
    ins.customers[0].window_start_s = 100.0;
    ins.customers[0].window_end_s = 50.0;
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);

    ins = testing::mini_instance();
    ins.nodes[3].position.x = 1200.0;  // outside the region
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);

    ins = testing::mini_instance();
    ins.drones.clear();
    CHECK_THROWS_AS(ins.validate(), std::invalid_argument);
}

TEST_CASE("instance hash reacts to content changes") {
    Instance a = testing::mini_instance();
    Instance b = testing::mini_instance();
    CHECK(instance_hash(a) == instance_hash(b));
    CHECK(instance_hash(a).size() == 16);

    b.customers[0].window_end_s = 12345.0;
    CHECK(instance_hash(a) != instance_hash(b));
}

TEST_CASE("node lookups") {
    Instance ins = testing::mini_instance();
    CHECK(ins.depot_ids() == std::vector<int>{0, 1});
    CHECK(ins.customer_index(2) == 0);
    CHECK(ins.customer_index(3) == 1);
    CHECK(ins.customer_index(0) == -1);
    CHECK(ins.kind_of(4) == NodeKind::ChargingStation);
    CHECK(ins.flyable_count() == 7);
}

TEST_CASE("op times map to node kinds") {
    OpTimes t;
    CHECK(t.of(NodeKind::Depot) == 120.0);
    CHECK(t.of(NodeKind::Customer) == 60.0);
    CHECK(t.of(NodeKind::ChargingStation) == 180.0);
    CHECK(t.of(NodeKind::Waypoint) == 0.0);
}

TEST_CASE("illustrative scenario has 26 labels") {
    Instance ins = testing::illustrative_instance();
    ins.validate();
    CHECK(ins.flyable_count() == 26);
    CHECK(ins.customer_count() == 2);
}
