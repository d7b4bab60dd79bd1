#ifndef CCA_PROPAGATION_HPP
#define CCA_PROPAGATION_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "cca/units.hpp"

namespace cca {

enum class PathLossModel { FSPL, LogDistance, TwoSlope };

/// Path-loss model parameters. The reference loss pl0 may be left unset,
/// in which case it resolves to FSPL at d0.
struct PropagationParams {
    PathLossModel model = PathLossModel::FSPL;
    double d0_m = 1.0;                  // reference distance
    std::optional<double> pl0_db;       // reference loss; FSPL(d0) if unset
    double exponent = 2.0;              // path-loss exponent n
    double sigma_db = 0.0;              // shadowing std-dev

    void validate() const {
        if (model != PathLossModel::FSPL && !(d0_m > 0.0))
            throw std::domain_error("reference distance d0 must be positive");
        if (!(exponent >= 1.0))
            throw std::domain_error("path-loss exponent must be >= 1");
        if (!(sigma_db >= 0.0))
            throw std::domain_error("shadowing sigma must be >= 0");
    }
};

/// Free-space path loss 20*log10(4*pi*d / lambda).
inline double fspl_db(Distance d, Frequency f) {
    if (!(d.meters > 0.0))
        throw std::domain_error("fspl requires d > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * d.meters / f.wavelength_m());
}

/// Reference loss PL0: explicit value if configured, otherwise FSPL at d0.
inline double reference_loss_db(const PropagationParams& p, Frequency f) {
    if (p.pl0_db)
        return *p.pl0_db;
    return fspl_db(Distance{p.d0_m}, f);
}

/// Mean (shadowing-free) path loss at distance d.
///
/// LogDistance requires d >= d0; TwoSlope falls back to FSPL below d0.
inline double mean_path_loss_db(Distance d, const PropagationParams& p, Frequency f) {
    p.validate();
    switch (p.model) {
        case PathLossModel::FSPL:
            return fspl_db(d, f);
        case PathLossModel::TwoSlope:
            if (d.meters < p.d0_m)
                return fspl_db(d, f);
            break;
        case PathLossModel::LogDistance:
            if (d.meters < p.d0_m)
                throw std::domain_error(
                    "log-distance model undefined below reference distance d0");
            break;
    }
    return reference_loss_db(p, f) +
           10.0 * p.exponent * std::log10(d.meters / p.d0_m);
}

/// Mean path loss plus sigma * draw, where draw is a unit-normal sample
/// supplied by the caller.
inline double shadowed_path_loss_db(Distance d, const PropagationParams& p,
                                    Frequency f, double draw) {
    double mean = mean_path_loss_db(d, p, f);
    if (p.sigma_db == 0.0)
        return mean;
    return mean + p.sigma_db * draw;
}

/// Received power from transmit power and path loss.
inline PowerLevel received_power(PowerLevel pt, double path_loss_db) {
    return PowerLevel{pt.dbm - path_loss_db};
}

}  // namespace cca

#endif
