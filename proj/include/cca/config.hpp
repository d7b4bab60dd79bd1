#ifndef CCA_CONFIG_HPP
#define CCA_CONFIG_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cca/ccpr.hpp"
#include "cca/gridsim.hpp"
#include "cca/link_budget.hpp"

namespace cca::config {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Unknown keys are rejected so typos in scientific inputs fail loudly.
inline void check_keys(const nlohmann::json& j,
                       const std::set<std::string>& allowed,
                       const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key \"" + key + "\" in " + where);
}

template <class T>
T require(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(std::string("missing \"") + key + "\" in " + where);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("bad value for \"") + key + "\" in " +
                          where);
    }
}

template <class T>
std::optional<T> optional_of(const nlohmann::json& j, const char* key,
                             const std::string& where) {
    if (!j.contains(key))
        return std::nullopt;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("bad value for \"") + key + "\" in " +
                          where);
    }
}

}  // namespace detail

inline ccpr::CcprKey parse_mode(const nlohmann::json& j,
                                const std::string& where) {
    detail::check_keys(
        j, {"standard", "modulation", "code_rate", "channel", "source"}, where);
    ccpr::CcprKey k;
    k.standard =
        ccpr::parse_standard(detail::require<std::string>(j, "standard", where));
    k.modulation = ccpr::parse_modulation(
        detail::require<std::string>(j, "modulation", where));
    if (k.modulation == ccpr::Modulation::G2 ||
        k.modulation == ccpr::Modulation::G8)
        k.code_rate = ccpr::variant_code_rate(k.modulation);
    else
        k.code_rate = ccpr::parse_code_rate(
            detail::require<std::string>(j, "code_rate", where));
    k.channel =
        ccpr::parse_channel(detail::require<std::string>(j, "channel", where));
    k.source =
        ccpr::parse_source(detail::require<std::string>(j, "source", where));
    return k;
}

inline gridsim::Antenna parse_antenna(const nlohmann::json& j,
                                      const std::string& where) {
    std::string type = detail::require<std::string>(j, "type", where);
    if (type == "omni") {
        detail::check_keys(j, {"type"}, where);
        return gridsim::Antenna::omni();
    }
    if (type == "directive") {
        detail::check_keys(
            j, {"type", "bearing_deg", "beamwidth_deg", "front_to_back_db"},
            where);
        return gridsim::Antenna::directive_at(
            detail::require<double>(j, "bearing_deg", where),
            detail::require<double>(j, "beamwidth_deg", where),
            detail::require<double>(j, "front_to_back_db", where));
    }
    throw ConfigError("antenna type must be \"omni\" or \"directive\" in " +
                      where);
}

inline gridsim::Transmitter parse_transmitter(const nlohmann::json& j,
                                              const std::string& where) {
    detail::check_keys(j,
                       {"id", "role", "x_m", "y_m", "erp_dbm", "antenna",
                        "height_tag", "mode"},
                       where);
    gridsim::Transmitter tx;
    tx.id = detail::require<std::string>(j, "id", where);
    tx.x_m = detail::require<double>(j, "x_m", where);
    tx.y_m = detail::require<double>(j, "y_m", where);
    tx.erp_dbm = detail::require<double>(j, "erp_dbm", where);
    if (j.contains("antenna"))
        tx.antenna = parse_antenna(j.at("antenna"), where + ".antenna");
    if (auto tag = detail::optional_of<std::string>(j, "height_tag", where))
        tx.height_tag = *tag;
    if (j.contains("mode"))
        tx.mode = parse_mode(j.at("mode"), where + ".mode");
    return tx;
}

inline PropagationParams parse_propagation(const nlohmann::json& j) {
    detail::check_keys(
        j, {"model", "d0_m", "pl0_db", "n", "sigma_db", "terrain"},
        "propagation");
    PropagationParams p;
    std::string model = detail::require<std::string>(j, "model", "propagation");
    if (model == "FSPL")
        p.model = PathLossModel::FSPL;
    else if (model == "LogDistance")
        p.model = PathLossModel::LogDistance;
    else if (model == "TwoSlope")
        p.model = PathLossModel::TwoSlope;
    else
        throw ConfigError("propagation model must be FSPL, LogDistance, or "
                          "TwoSlope");
    if (auto d0 = detail::optional_of<double>(j, "d0_m", "propagation"))
        p.d0_m = *d0;
    p.pl0_db = detail::optional_of<double>(j, "pl0_db", "propagation");
    if (auto n = detail::optional_of<double>(j, "n", "propagation"))
        p.exponent = *n;
    if (auto s = detail::optional_of<double>(j, "sigma_db", "propagation"))
        p.sigma_db = *s;
    // Longley-Rice terrain inputs are accepted for forward compatibility
    // but have no effect on the built-in models.
    if (j.contains("terrain"))
        detail::check_keys(j.at("terrain"),
                           {"permittivity", "conductivity_s_m",
                            "surface_refractivity", "climate",
                            "location_variability_pct", "time_variability_pct"},
                           "propagation.terrain");
    p.validate();
    return p;
}

struct OutputSpec {
    std::optional<std::string> raster_path;
    gridsim::RasterFormat raster_format = gridsim::RasterFormat::PGM;
    std::optional<std::string> stats_path;
};

struct SimulationConfig {
    gridsim::Scenario scenario;
    OutputSpec output;
};

/// Parse the full `simulate` configuration document. Protection ratios
/// resolve from the embedded table via each transmitter's mode unless the
/// `ccpr` section overrides them; the noise floor comes from an explicit
/// value or the `linkbudget` section.
inline SimulationConfig parse_config(const nlohmann::json& doc) {
    detail::check_keys(
        doc, {"scenario", "propagation", "ccpr", "linkbudget", "output"},
        "config");
    if (!doc.contains("scenario"))
        throw ConfigError("missing \"scenario\" section");
    const auto& sj = doc.at("scenario");
    detail::check_keys(sj,
                       {"frequency_mhz", "seed", "noise_floor_dbm",
                        "constant_pr_reg_dbm", "location_margin", "grid",
                        "cell_cap", "transmitters"},
                       "scenario");

    SimulationConfig cfg;
    gridsim::Scenario& s = cfg.scenario;
    s.frequency = Frequency{detail::require<double>(sj, "frequency_mhz", "scenario")};
    if (auto seed = detail::optional_of<std::uint64_t>(sj, "seed", "scenario"))
        s.seed = *seed;
    s.constant_pr_reg_dbm =
        detail::optional_of<double>(sj, "constant_pr_reg_dbm", "scenario");
    if (auto lm = detail::optional_of<bool>(sj, "location_margin", "scenario"))
        s.location_margin = *lm;
    if (auto cap = detail::optional_of<std::size_t>(sj, "cell_cap", "scenario"))
        s.cell_cap = *cap;

    const auto& gj = sj.at("grid");
    detail::check_keys(
        gj, {"origin_x_m", "origin_y_m", "width_m", "height_m", "resolution_m"},
        "scenario.grid");
    s.grid.origin_x_m = detail::require<double>(gj, "origin_x_m", "scenario.grid");
    s.grid.origin_y_m = detail::require<double>(gj, "origin_y_m", "scenario.grid");
    s.grid.width_m = detail::require<double>(gj, "width_m", "scenario.grid");
    s.grid.height_m = detail::require<double>(gj, "height_m", "scenario.grid");
    s.grid.resolution_m =
        detail::require<double>(gj, "resolution_m", "scenario.grid");

    bool have_regular = false, have_rogue = false;
    for (const auto& tj : sj.at("transmitters")) {
        std::string role =
            detail::require<std::string>(tj, "role", "transmitter");
        gridsim::Transmitter tx = parse_transmitter(tj, "transmitter");
        if (role == "regular") {
            if (have_regular)
                throw ConfigError("exactly one regular transmitter required");
            s.regular = std::move(tx);
            have_regular = true;
        } else if (role == "rogue") {
            if (have_rogue)
                throw ConfigError("exactly one rogue transmitter required");
            s.rogue = std::move(tx);
            have_rogue = true;
        } else {
            throw ConfigError("transmitter role must be regular or rogue");
        }
    }
    if (!have_regular || !have_rogue)
        throw ConfigError("scenario needs one regular and one rogue transmitter");

    if (doc.contains("propagation"))
        s.propagation = parse_propagation(doc.at("propagation"));

    // alphas: table lookup by mode, overridable
    const auto& table = ccpr::Table::instance();
    auto resolve_alpha = [&](const gridsim::Transmitter& tx) -> std::optional<double> {
        return table.lookup(tx.mode);
    };
    if (auto a = resolve_alpha(s.regular))
        s.alpha_reg_db = *a;
    if (auto a = resolve_alpha(s.rogue))
        s.alpha_rogue_db = *a;
    if (doc.contains("ccpr")) {
        const auto& cj = doc.at("ccpr");
        detail::check_keys(cj, {"alpha_rogue_db", "alpha_reg_db"}, "ccpr");
        if (auto a = detail::optional_of<double>(cj, "alpha_rogue_db", "ccpr"))
            s.alpha_rogue_db = *a;
        if (auto a = detail::optional_of<double>(cj, "alpha_reg_db", "ccpr"))
            s.alpha_reg_db = *a;
    }

    if (auto nf = detail::optional_of<double>(sj, "noise_floor_dbm", "scenario")) {
        s.noise_floor_dbm = *nf;
    } else if (doc.contains("linkbudget")) {
        const auto& lj = doc.at("linkbudget");
        detail::check_keys(lj, {"noise_figure_db", "bandwidth_hz", "cn_db"},
                           "linkbudget");
        double f = detail::require<double>(lj, "noise_figure_db", "linkbudget");
        double b = lj.contains("bandwidth_hz")
                       ? lj.at("bandwidth_hz").get<double>()
                       : link_budget::kDefaultBandwidthHz;
        double cn = detail::require<double>(lj, "cn_db", "linkbudget");
        s.noise_floor_dbm = link_budget::min_input_power_dbm(f, b, cn);
    }

    if (doc.contains("output")) {
        const auto& oj = doc.at("output");
        detail::check_keys(oj, {"raster", "raster_format", "stats"}, "output");
        cfg.output.raster_path =
            detail::optional_of<std::string>(oj, "raster", "output");
        if (auto fmt =
                detail::optional_of<std::string>(oj, "raster_format", "output")) {
            if (*fmt == "pgm")
                cfg.output.raster_format = gridsim::RasterFormat::PGM;
            else if (*fmt == "csv")
                cfg.output.raster_format = gridsim::RasterFormat::CSV;
            else
                throw ConfigError("raster_format must be pgm or csv");
        }
        cfg.output.stats_path =
            detail::optional_of<std::string>(oj, "stats", "output");
    }
    return cfg;
}

}  // namespace cca::config

#endif
