#ifndef CCA_CIR_HPP
#define CCA_CIR_HPP

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cca/analytic.hpp"
#include "cca/ccpr.hpp"

namespace cca::cir {

struct Path {
    double delay_us;
    double rel_power_db;  // relative to the strongest path, <= 0
    std::optional<std::string> label;
};

/// One geolocated channel-impulse-response measurement: the per-path
/// delay/power profile at a point.
struct ImpulseResponseRecord {
    double lat_deg;
    double lon_deg;
    std::vector<Path> paths;
    std::optional<ccpr::CcprKey> measured_mode;

    void validate() const {
        if (paths.empty())
            throw std::domain_error("record has no paths");
        bool has_zero = false;
        for (const auto& p : paths) {
            if (p.delay_us < 0.0)
                throw std::domain_error("negative path delay");
            if (p.rel_power_db > 0.0)
                throw std::domain_error(
                    "path power above the strongest-path reference");
            if (p.rel_power_db == 0.0)
                has_zero = true;
        }
        if (!has_zero)
            throw std::domain_error("strongest path must sit at 0 dB exactly");
    }
};

struct PathAssignment {
    std::size_t echo_index;
    std::size_t original_index;
};

struct AmbiguousAssignment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientPaths : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// LabelMatch pairs `<name>` with `<name>-echo`; DelayWindow pairs the
/// path nearest an expected delay with the next arrival inside a window.
struct AssignmentPolicy {
    enum Kind { LabelMatch, DelayWindow } kind = DelayWindow;
    std::string original_label;           // LabelMatch
    double expected_delay_us = 0.0;       // DelayWindow
    double window_us = 1e9;               // DelayWindow: max echo lag
};

inline PathAssignment assign_paths(const ImpulseResponseRecord& rec,
                                   const AssignmentPolicy& policy) {
    if (rec.paths.size() < 2)
        throw InsufficientPaths("need at least two paths");
    if (policy.kind == AssignmentPolicy::LabelMatch) {
        std::string echo_label = policy.original_label + "-echo";
        std::optional<std::size_t> orig, echo;
        for (std::size_t i = 0; i < rec.paths.size(); ++i) {
            if (!rec.paths[i].label)
                continue;
            if (*rec.paths[i].label == policy.original_label) {
                if (orig)
                    throw AmbiguousAssignment("duplicate original label");
                orig = i;
            } else if (*rec.paths[i].label == echo_label) {
                if (echo)
                    throw AmbiguousAssignment("duplicate echo label");
                echo = i;
            }
        }
        if (!orig || !echo)
            throw AmbiguousAssignment("labels not found: " +
                                      policy.original_label);
        return PathAssignment{*echo, *orig};
    }
    // DelayWindow: original = path nearest the expected delay, echo = the
    // next-later arrival within the window.
    std::size_t orig = 0;
    double best = std::abs(rec.paths[0].delay_us - policy.expected_delay_us);
    for (std::size_t i = 1; i < rec.paths.size(); ++i) {
        double d = std::abs(rec.paths[i].delay_us - policy.expected_delay_us);
        if (d < best) {
            best = d;
            orig = i;
        }
    }
    std::optional<std::size_t> echo;
    for (std::size_t i = 0; i < rec.paths.size(); ++i) {
        if (i == orig)
            continue;
        double lag = rec.paths[i].delay_us - rec.paths[orig].delay_us;
        if (lag <= 0.0 || lag > policy.window_us)
            continue;
        if (!echo || rec.paths[i].delay_us < rec.paths[*echo].delay_us)
            echo = i;
        else if (rec.paths[i].delay_us == rec.paths[*echo].delay_us)
            throw AmbiguousAssignment("two echo candidates at equal delay");
    }
    if (!echo)
        throw AmbiguousAssignment("no echo candidate inside delay window");
    return PathAssignment{*echo, orig};
}

enum class PointClass {
    Controlled,
    MushEchoStronger,
    MushOriginalStronger,
    Regular,
};

inline const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Controlled: return "controlled";
        case PointClass::MushEchoStronger: return "mush_echo";
        case PointClass::MushOriginalStronger: return "mush_original";
        case PointClass::Regular: return "regular";
    }
    return "?";
}

/// Classification by the echo-over-original margin against the two
/// protection ratios; only the designated pair matters.
inline PointClass classify_point(const ImpulseResponseRecord& rec,
                                 const PathAssignment& a,
                                 double alpha_rogue_db, double alpha_reg_db) {
    double margin = rec.paths[a.echo_index].rel_power_db -
                    rec.paths[a.original_index].rel_power_db;
    if (margin >= alpha_rogue_db)
        return PointClass::Controlled;
    if (-margin >= alpha_reg_db)
        return PointClass::Regular;
    return margin >= 0.0 ? PointClass::MushEchoStronger
                         : PointClass::MushOriginalStronger;
}

inline double margin_db(const ImpulseResponseRecord& rec,
                        const PathAssignment& a) {
    return rec.paths[a.echo_index].rel_power_db -
           rec.paths[a.original_index].rel_power_db;
}

/// NDJSON ingestion: one record per line,
/// {"lat":…, "lon":…, "paths":[{"delay_us":…, "rel_db":…, "label":…}], "mode":…}
inline ImpulseResponseRecord parse_record(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    ImpulseResponseRecord rec;
    rec.lat_deg = j.at("lat").get<double>();
    rec.lon_deg = j.at("lon").get<double>();
    for (const auto& pj : j.at("paths")) {
        Path p;
        p.delay_us = pj.at("delay_us").get<double>();
        p.rel_power_db = pj.at("rel_db").get<double>();
        if (pj.contains("label"))
            p.label = pj.at("label").get<std::string>();
        rec.paths.push_back(std::move(p));
    }
    rec.validate();
    return rec;
}

inline std::vector<ImpulseResponseRecord> read_records(std::istream& in) {
    std::vector<ImpulseResponseRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        out.push_back(parse_record(line));
    }
    return out;
}

struct ClassifiedPoint {
    ImpulseResponseRecord record;
    PointClass cls;
    double margin_db;
};

/// GeoJSON FeatureCollection of classified points. Display colors per
/// class: controlled=red, mush_echo=dark gray, mush_original=light gray,
/// regular=green.
inline void emit_geojson(const std::vector<ClassifiedPoint>& points,
                         std::ostream& os) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& p : points) {
        features.push_back({
            {"type", "Feature"},
            {"geometry",
             {{"type", "Point"},
              {"coordinates", {p.record.lon_deg, p.record.lat_deg}}}},
            {"properties",
             {{"class", to_string(p.cls)}, {"margin_db", p.margin_db}}},
        });
    }
    nlohmann::json fc = {{"type", "FeatureCollection"},
                         {"features", std::move(features)}};
    os << fc.dump(2) << '\n';
    if (!os)
        throw std::runtime_error("GeoJSON write failed");
}

}  // namespace cca::cir

#endif
