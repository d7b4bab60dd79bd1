#ifndef CCA_GAPFILLER_HPP
#define CCA_GAPFILLER_HPP

#include <stdexcept>

#include "cca/ccpr.hpp"
#include "cca/gridsim.hpp"
#include "cca/units.hpp"

namespace cca::gapfiller {

/// On-channel repeater characteristics.
struct GapFillerSpec {
    double input_min_dbm;
    double input_max_dbm;
    double rx_antenna_gain_dbd = 0.0;
    double output_erp_dbm = 0.0;
    ccpr::CcprKey mode{};

    void validate() const {
        if (!(input_min_dbm < input_max_dbm))
            throw std::domain_error("gap-filler input window is empty");
    }
};

struct AttackInput {
    double p_rbv_dbm;  // broadcaster at gap-filler input
    double p_rav_dbm;  // attacker at gap-filler input
    double p_rba_dbm = 0.0;  // broadcaster at attacker; informational
};

enum class Verdict { Success, InsufficientMargin, Saturation, BelowSensitivity };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Success: return "success";
        case Verdict::InsufficientMargin: return "insufficient_margin";
        case Verdict::Saturation: return "saturation";
        case Verdict::BelowSensitivity: return "below_sensitivity";
    }
    return "?";
}

struct Evaluation {
    Verdict verdict;
    double margin_db;          // p_rav - p_rbv
    double combined_input_dbm;  // power sum of both inputs
};

/// Capture feasibility at the repeater input. The input window is judged
/// on the combined (power-summed) level of both signals, since the
/// repeater amplifies the composite.
inline Evaluation evaluate(const GapFillerSpec& spec, const AttackInput& in,
                           double alpha_db) {
    spec.validate();
    double margin = in.p_rav_dbm - in.p_rbv_dbm;
    double combined = power_sum(PowerLevel::from_dbm(in.p_rav_dbm),
                                PowerLevel::from_dbm(in.p_rbv_dbm))
                          .dbm;
    Verdict v;
    if (combined > spec.input_max_dbm)
        v = Verdict::Saturation;
    else if (combined < spec.input_min_dbm)
        v = Verdict::BelowSensitivity;
    else if (margin >= alpha_db)
        v = Verdict::Success;
    else
        v = Verdict::InsufficientMargin;
    return Evaluation{v, margin, combined};
}

/// Interference the attacker's direct emission causes to end users on the
/// repeater's input frequency; plain grid simulation over that scenario.
inline gridsim::ClassStats downstream_interference(
    const gridsim::Scenario& scenario, unsigned threads = 0) {
    gridsim::GridMap m = gridsim::simulate(scenario, threads);
    return gridsim::statistics(m);
}

}  // namespace cca::gapfiller

#endif
