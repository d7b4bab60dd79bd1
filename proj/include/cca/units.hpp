#ifndef CCA_UNITS_HPP
#define CCA_UNITS_HPP

#include <cmath>
#include <stdexcept>

namespace cca {

inline constexpr double kSpeedOfLight = 299'792'458.0;     // m/s, exact
inline constexpr double kBoltzmann = 1.380649e-23;         // J/K, exact SI
inline constexpr double kReferenceTemperature = 290.0;     // K

/// Carrier frequency in MHz.
struct Frequency {
    double megahertz;

    explicit Frequency(double mhz) : megahertz(mhz) {
        if (!(mhz > 0.0))
            throw std::domain_error("Frequency must be positive");
    }

    double hertz() const { return megahertz * 1e6; }
    double wavelength_m() const { return kSpeedOfLight / hertz(); }
};

/// Distance in meters, non-negative.
struct Distance {
    double meters;

    explicit Distance(double m) : meters(m) {
        if (!(m >= 0.0))
            throw std::domain_error("Distance must be non-negative");
    }
};

enum class PowerRef { dBm, dBW };

/// Power level, stored internally in dBm. dBW is converted exactly once
/// at construction.
struct PowerLevel {
    double dbm;

    static PowerLevel from_dbm(double v) { return PowerLevel{v}; }
    static PowerLevel from_dbw(double v) { return PowerLevel{v + 30.0}; }
    static PowerLevel from(double v, PowerRef ref) {
        return ref == PowerRef::dBm ? from_dbm(v) : from_dbw(v);
    }

    double dbw() const { return dbm - 30.0; }
    double milliwatts() const { return std::pow(10.0, dbm / 10.0); }
    static PowerLevel from_milliwatts(double mw) {
        return PowerLevel{10.0 * std::log10(mw)};
    }
};

/// Power-sum of two levels in the linear domain.
inline PowerLevel power_sum(PowerLevel a, PowerLevel b) {
    return PowerLevel::from_milliwatts(a.milliwatts() + b.milliwatts());
}

}  // namespace cca

#endif
