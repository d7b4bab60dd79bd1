#ifndef CCA_LINK_BUDGET_HPP
#define CCA_LINK_BUDGET_HPP

#include <cmath>
#include <stdexcept>

#include "cca/units.hpp"

namespace cca::link_budget {

/// Receiver noise input power Pn = F + 10 log10(k * T0 * B), in dBW.
inline double noise_power_dbw(double noise_figure_db, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("bandwidth must be positive");
    return noise_figure_db +
           10.0 * std::log10(kBoltzmann * kReferenceTemperature * bandwidth_hz);
}

/// Minimum receiver input power Pn + C/N, in dBm.
inline double min_input_power_dbm(double noise_figure_db, double bandwidth_hz,
                                  double cn_db) {
    return noise_power_dbw(noise_figure_db, bandwidth_hz) + cn_db + 30.0;
}

// DVB-T 8 MHz channel noise bandwidth.
inline constexpr double kDefaultBandwidthHz = 7.61e6;

struct LinkBudget {
    double noise_figure_db;
    double bandwidth_hz;
    double required_cn_db;

    double noise_power_dbw() const {
        return link_budget::noise_power_dbw(noise_figure_db, bandwidth_hz);
    }
    double min_input_dbm() const {
        return min_input_power_dbm(noise_figure_db, bandwidth_hz, required_cn_db);
    }
};

}  // namespace cca::link_budget

#endif
