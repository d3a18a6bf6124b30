#pragma once

// Small hand-built instances shared across test files.

#include <vector>

#include "cddp/instance.hpp"
#include "cddp/voronoi.hpp"

namespace cddp::testing {

// Compact scenario: two depots on opposite corners, two customers, one
// charging station, the two waypoints induced by a two-station network, one
// drone. Everything reachable, no thresholds.
inline Instance mini_instance() {
    Instance ins;
    ins.region = {1000.0, 1000.0};
    ins.horizon_s = 28800.0;
    ins.comm = CommNetwork({{0, {0.0, 0.0}, 46.0}, {1, {1000.0, 0.0}, 46.0}}, CommParams{});
    ins.nodes = {
        {0, NodeKind::Depot, {0.0, 0.0}},
        {1, NodeKind::Depot, {1000.0, 1000.0}},
        {2, NodeKind::Customer, {500.0, 150.0}},
        {3, NodeKind::Customer, {500.0, 900.0}},
        {4, NodeKind::ChargingStation, {300.0, 300.0}},
        {5, NodeKind::Waypoint, {500.0, 0.0}},
        {6, NodeKind::Waypoint, {500.0, 1000.0}},
    };
    ins.customers = {
        {2, 0.0, 28800.0, 60.0},
        {3, 0.0, 28800.0, 60.0},
    };
    ins.drones = {{0, 0, 1}};
    return ins;
}

// The walk-through scenario: a 1 km zone, nine stations on the diagonals,
// four corner depots, four charging stations, two customers, one drone from
// depot 0 to depot 1. The sixteen induced waypoints bring the label count
// to 26.
inline Instance illustrative_instance() {
    Instance ins;
    ins.region = {1000.0, 1000.0};
    ins.horizon_s = 28800.0;

    const std::vector<Point2> sites{{0.0, 0.0},      {250.0, 250.0},   {500.0, 500.0},
                                    {750.0, 750.0},  {1000.0, 1000.0}, {0.0, 1000.0},
                                    {250.0, 750.0},  {750.0, 250.0},   {1000.0, 0.0}};
    std::vector<BaseStation> stations;
    for (std::size_t i = 0; i < sites.size(); ++i)
        stations.push_back({static_cast<int>(i), sites[i], 46.0});
    ins.comm = CommNetwork(std::move(stations), CommParams{});

    int id = 0;
    for (const Point2& p : std::vector<Point2>{{0.0, 0.0}, {1000.0, 0.0}, {1000.0, 1000.0}, {0.0, 1000.0}})
        ins.nodes.push_back({id++, NodeKind::Depot, p});
    for (const Point2& p : std::vector<Point2>{{500.0, 150.0}, {500.0, 900.0}})
        ins.nodes.push_back({id++, NodeKind::Customer, p});
    for (const Point2& p : std::vector<Point2>{{300.0, 300.0}, {700.0, 300.0}, {700.0, 700.0}, {300.0, 700.0}})
        ins.nodes.push_back({id++, NodeKind::ChargingStation, p});
    for (const Point2& p : voronoi_waypoints(sites, ins.region))
        ins.nodes.push_back({id++, NodeKind::Waypoint, p});

    ins.customers = {
        {4, 0.0, 28800.0, 60.0},
        {5, 0.0, 28800.0, 60.0},
    };
    ins.drones = {{0, 0, 1}};
    return ins;
}

}  // namespace cddp::testing
