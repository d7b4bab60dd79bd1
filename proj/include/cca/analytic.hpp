#ifndef CCA_ANALYTIC_HPP
#define CCA_ANALYTIC_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cca/propagation.hpp"
#include "cca/units.hpp"

namespace cca::analytic {

/// Inputs for closed-form attack-geometry calculations. Shadowing is
/// ignored here; pr_reg is treated as constant over the attacked area.
struct AttackGeometry {
    double pt_rogue_dbm;
    double pr_reg_dbm;
    double alpha_rogue_db;
    double alpha_reg_db = 0.0;
    PropagationParams params;
    Frequency frequency{500.0};
};

/// Reception condition: wanted signal exceeds unwanted by the wanted
/// mode's protection ratio (non-strict).
inline bool can_receive(double pr_wanted_dbm, double pr_unwanted_dbm,
                        double alpha_wanted_db) {
    return pr_wanted_dbm >= pr_unwanted_dbm + alpha_wanted_db;
}

struct RangeResult {
    double d_rogue_m;
    /// The computed radius fell below d0; under the log-distance model the
    /// value is an extrapolation, not a coverage claim.
    bool sub_reference;
};

/// Maximum radius around the rogue transmitter at which receivers still
/// decode the rogue signal:
///   d_rogue = d0 * 10^((Pt - Pr_reg - alpha - PL0) / (10 n))
inline RangeResult max_attack_radius(const AttackGeometry& g) {
    g.params.validate();
    double pl0 = reference_loss_db(g.params, g.frequency);
    double n = g.params.exponent;
    double margin = g.pt_rogue_dbm - g.pr_reg_dbm - g.alpha_rogue_db - pl0;
    double d = g.params.d0_m * std::pow(10.0, margin / (10.0 * n));
    return RangeResult{d, d < g.params.d0_m};
}

/// A_rogue = pi * d_rogue^2, in square meters.
inline double controlled_area_m2(double d_rogue_m) {
    if (!(d_rogue_m >= 0.0))
        throw std::domain_error("radius must be non-negative");
    return std::numbers::pi * d_rogue_m * d_rogue_m;
}

/// Transmit power needed to control a disc of the given radius; inverse
/// of max_attack_radius.
inline double required_power_dbm(double d_rogue_m, const AttackGeometry& g) {
    g.params.validate();
    if (d_rogue_m < g.params.d0_m)
        throw std::domain_error("required_power undefined below d0");
    double pl0 = reference_loss_db(g.params, g.frequency);
    return g.pr_reg_dbm + g.alpha_rogue_db + pl0 +
           10.0 * g.params.exponent * std::log10(d_rogue_m / g.params.d0_m);
}

/// Ratio d_rogue / d_reg between controlled and affected radius. Depends
/// only on the two protection ratios and the path-loss exponent.
inline double radius_ratio(double alpha_rogue_db, double alpha_reg_db,
                           double n) {
    if (!(n >= 1.0))
        throw std::domain_error("path-loss exponent must be >= 1");
    return std::pow(10.0, -(alpha_rogue_db + alpha_reg_db) / (10.0 * n));
}

/// A_controlled / A_affected = radius_ratio squared.
inline double area_fraction(double alpha_rogue_db, double alpha_reg_db,
                            double n) {
    if (!(n >= 1.0))
        throw std::domain_error("path-loss exponent must be >= 1");
    return std::pow(10.0, -(alpha_rogue_db + alpha_reg_db) / (5.0 * n));
}

}  // namespace cca::analytic

#endif
