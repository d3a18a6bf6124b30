#pragma once

#include <vector>

#include "cddp/geometry.hpp"

namespace cddp {

// Air-to-ground channel parameters. Losses are in dB, powers in dBm; all
// SINR arithmetic happens in linear milliwatts.
struct CommParams {
    double alpha1 = 12.08;              // environment parameter (dimensionless)
    double alpha2 = 0.11;               // environment parameter (dimensionless)
    double alpha3 = 2.5;                // pathloss exponent
    double mu_los_db = 1.6;             // excess loss, LoS group
    double mu_nlos_db = 23.0;           // excess loss, NLoS group
    double noise_power_dbm = -173.0;    // receiver noise power
    double carrier_freq_hz = 2.0e9;
    double light_speed_mps = 299792458.0;
    double drone_altitude_m = 100.0;
    double se_threshold = 2.0;          // outage threshold, bits/s/Hz

    void validate() const;  // throws std::invalid_argument
};

struct BaseStation {
    int id = 0;
    Point2 position;
    double tx_power_dbm = 46.0;
};

// Fixed ground base stations plus channel parameters. All queries are pure
// functions of the immutable network; a drone at fixed altitude is served by
// the station nearest to its ground projection.
class CommNetwork {
  public:
    CommNetwork() = default;
    CommNetwork(std::vector<BaseStation> stations, CommParams params)
        : stations_(std::move(stations)), params_(params) {}

    const std::vector<BaseStation>& stations() const { return stations_; }
    const CommParams& params() const { return params_; }
    CommParams& params() { return params_; }
    int station_count() const { return static_cast<int>(stations_.size()); }

    // Probability of line-of-sight to station cn from a drone whose ground
    // projection is at g. Directly overhead counts as a 90 degree elevation.
    double los_probability(int cn, const Point2& g) const;

    // Mean pathloss in dB: free-space term at the slant distance plus the
    // LoS/NLoS-weighted excess loss.
    double mean_pathloss(int cn, const Point2& g) const;

    // Linear SINR when receiving from station cn; every other station
    // contributes interference.
    double sinr(int cn, const Point2& g) const;

    // Spectral efficiency log2(1 + SINR), bits/s/Hz.
    double spectral_efficiency(int cn, const Point2& g) const;

    // Index of the nearest station by ground distance; ties break to the
    // smallest index so derived metrics are reproducible.
    int serving_cn(const Point2& g) const;

    // Spectral efficiency from the serving station (one pass over stations).
    double serving_spectral_efficiency(const Point2& g) const;

    void validate() const;  // throws std::invalid_argument

    const BaseStation& station_at(int cn) const;  // throws std::out_of_range

  private:
    std::vector<BaseStation> stations_;
    CommParams params_;
};

}  // namespace cddp
