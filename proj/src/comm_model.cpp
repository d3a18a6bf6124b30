#include "cddp/comm_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cddp {

namespace {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("CommParams: ") + what);
}

}  // namespace

void CommParams::validate() const {
    require(alpha1 > 0.0, "alpha1 must be > 0");
    require(alpha2 > 0.0, "alpha2 must be > 0");
    require(alpha3 > 0.0, "alpha3 must be > 0");
    require(drone_altitude_m > 0.0, "drone_altitude_m must be > 0");
    require(carrier_freq_hz > 0.0, "carrier_freq_hz must be > 0");
    require(light_speed_mps > 0.0, "light_speed_mps must be > 0");
    require(se_threshold >= 0.0, "se_threshold must be >= 0");
    require(mu_nlos_db >= mu_los_db, "mu_nlos_db must be >= mu_los_db");
}

const BaseStation& CommNetwork::station_at(int cn) const {
    if (cn < 0 || cn >= static_cast<int>(stations_.size()))
        throw std::out_of_range("station index " + std::to_string(cn) + " out of range");
    return stations_[static_cast<std::size_t>(cn)];
}

double CommNetwork::los_probability(int cn, const Point2& g) const {
    const BaseStation& bs = station_at(cn);
    const double horiz = distance(bs.position, g);
    // Elevation in degrees; the overhead limit is exactly 90.
    const double theta_deg =
        horiz == 0.0 ? 90.0 : (180.0 / M_PI) * std::atan(params_.drone_altitude_m / horiz);
    return 1.0 / (1.0 + params_.alpha1 * std::exp(-params_.alpha2 * (theta_deg - params_.alpha1)));
}

double CommNetwork::mean_pathloss(int cn, const Point2& g) const {
    const BaseStation& bs = station_at(cn);
    const double horiz2 = squared_distance(bs.position, g);
    const double slant =
        std::sqrt(horiz2 + params_.drone_altitude_m * params_.drone_altitude_m);
    const double p_los = los_probability(cn, g);
    const double free_space =
        10.0 * params_.alpha3 *
        std::log10(4.0 * M_PI * params_.carrier_freq_hz / params_.light_speed_mps * slant);
    const double excess = params_.mu_los_db * p_los + params_.mu_nlos_db * (1.0 - p_los);
    return free_space + excess;
}

double CommNetwork::sinr(int cn, const Point2& g) const {
    station_at(cn);
    const double noise_mw = dbm_to_mw(params_.noise_power_dbm);
    double signal_mw = 0.0;
    double interference_mw = 0.0;
    for (int j = 0; j < station_count(); ++j) {
        const double rx =
            dbm_to_mw(stations_[static_cast<std::size_t>(j)].tx_power_dbm) *
            std::pow(10.0, -mean_pathloss(j, g) / 10.0);
        if (j == cn)
            signal_mw = rx;
        else
            interference_mw += rx;
    }
    return signal_mw / (noise_mw + interference_mw);
}

double CommNetwork::spectral_efficiency(int cn, const Point2& g) const {
    return std::log2(1.0 + sinr(cn, g));
}

int CommNetwork::serving_cn(const Point2& g) const {
    if (stations_.empty()) throw std::out_of_range("serving_cn on empty network");
    int best = 0;
    double best_d2 = squared_distance(stations_[0].position, g);
    for (int i = 1; i < station_count(); ++i) {
        const double d2 = squared_distance(stations_[static_cast<std::size_t>(i)].position, g);
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

double CommNetwork::serving_spectral_efficiency(const Point2& g) const {
    return spectral_efficiency(serving_cn(g), g);
}

void CommNetwork::validate() const {
    params_.validate();
    if (stations_.empty()) throw std::invalid_argument("CommNetwork: at least one station required");
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        const BaseStation& bs = stations_[i];
        if (bs.id != static_cast<int>(i))
            throw std::invalid_argument("CommNetwork: station ids must be contiguous from 0");
        if (!std::isfinite(bs.position.x) || !std::isfinite(bs.position.y) ||
            !std::isfinite(bs.tx_power_dbm))
            throw std::invalid_argument("CommNetwork: station fields must be finite");
    }
}

}  // namespace cddp
