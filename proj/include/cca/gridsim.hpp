#ifndef CCA_GRIDSIM_HPP
#define CCA_GRIDSIM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cca/analytic.hpp"
#include "cca/ccpr.hpp"
#include "cca/propagation.hpp"
#include "cca/units.hpp"

namespace cca::gridsim {

struct OmniAntenna {};

/// Flat main lobe, flat back lobe at -front_to_back, cosine-tapered
/// transition over 10 degrees. The pattern is a declared approximation;
/// only gain figures are available for the reference hardware.
struct DirectiveAntenna {
    double bearing_deg;
    double beamwidth_deg;
    double front_to_back_db;
};

inline constexpr double kDbdToDbi = 2.15;

struct Antenna {
    bool directive = false;
    DirectiveAntenna pattern{};

    static Antenna omni() { return Antenna{}; }
    static Antenna directive_at(double bearing, double beamwidth, double ftb) {
        if (!(beamwidth > 0.0 && beamwidth < 360.0))
            throw std::domain_error("beamwidth must be in (0, 360)");
        return Antenna{true, {bearing, beamwidth, ftb}};
    }

    /// Relative gain toward an azimuth, in dB (0 on the main lobe).
    double gain_db(double azimuth_deg) const {
        if (!directive)
            return 0.0;
        double delta = std::fabs(std::fmod(azimuth_deg - pattern.bearing_deg, 360.0));
        if (delta > 180.0)
            delta = 360.0 - delta;
        double half = pattern.beamwidth_deg / 2.0;
        if (delta <= half)
            return 0.0;
        constexpr double kTransitionDeg = 10.0;
        if (delta >= half + kTransitionDeg)
            return -pattern.front_to_back_db;
        double t = (delta - half) / kTransitionDeg;
        double taper = (1.0 - std::cos(std::numbers::pi * t)) / 2.0;
        return -pattern.front_to_back_db * taper;
    }
};

struct Transmitter {
    std::string id;
    double x_m = 0.0;
    double y_m = 0.0;
    double erp_dbm = 0.0;
    Antenna antenna;
    std::string height_tag;
    ccpr::CcprKey mode{};
};

struct Grid {
    double origin_x_m = 0.0;
    double origin_y_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
    double resolution_m = 0.0;

    std::size_t nx() const {
        return static_cast<std::size_t>(std::ceil(width_m / resolution_m));
    }
    std::size_t ny() const {
        return static_cast<std::size_t>(std::ceil(height_m / resolution_m));
    }
};

struct Scenario {
    Transmitter regular;
    Transmitter rogue;
    Frequency frequency{500.0};
    PropagationParams propagation;
    double alpha_reg_db = 0.0;
    double alpha_rogue_db = 0.0;
    double noise_floor_dbm = -std::numeric_limits<double>::infinity();
    Grid grid;
    std::uint64_t seed = 0;
    std::size_t cell_cap = 100'000'000;

    /// Constant regular-signal override: the regular received power is
    /// this value everywhere instead of being computed per cell.
    std::optional<double> constant_pr_reg_dbm;

    /// Deterministic 95% location-variability margin: subtract
    /// 1.645 * sigma from each signal instead of drawing per cell.
    bool location_margin = false;
};

enum class CellClass : std::uint8_t {
    Regular,
    Rogue,
    MushRogueStronger,
    MushRegularStronger,
    NoService,
};

inline const char* to_string(CellClass c) {
    switch (c) {
        case CellClass::Regular: return "regular";
        case CellClass::Rogue: return "rogue";
        case CellClass::MushRogueStronger: return "mush_rogue_stronger";
        case CellClass::MushRegularStronger: return "mush_regular_stronger";
        case CellClass::NoService: return "no_service";
    }
    return "?";
}

struct GridMap {
    Scenario scenario;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> pr_regular_dbm;   // row-major, y outer
    std::vector<double> pr_rogue_dbm;
    std::vector<CellClass> cls;

    std::size_t index(std::size_t ix, std::size_t iy) const {
        return iy * nx + ix;
    }
    double cell_x(std::size_t ix) const {
        return scenario.grid.origin_x_m + (ix + 0.5) * scenario.grid.resolution_m;
    }
    double cell_y(std::size_t iy) const {
        return scenario.grid.origin_y_m + (iy + 0.5) * scenario.grid.resolution_m;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s)
        h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

/// Unit-normal shadowing draw for (seed, cell, transmitter id). Each
/// cell/transmitter pair gets an independent stream position.
inline double normal_draw(std::uint64_t seed, std::uint64_t cell,
                          const std::string& tx_id) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(cell));
    h = fnv1a(h ^ 0xcbf29ce484222325ULL, tx_id);
    std::uint64_t a = splitmix64(h);
    std::uint64_t b = splitmix64(a);
    // (0,1] uniforms; Box-Muller
    double u1 = (static_cast<double>(a >> 11) + 1.0) / 9007199254740993.0;
    double u2 = static_cast<double>(b >> 11) / 9007199254740992.0;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace detail

/// Received power from one transmitter at a point, with the near-field
/// distance floored at half a cell.
inline double cell_received_power(const Transmitter& tx, double x, double y,
                                  const Scenario& s, std::uint64_t cell_index) {
    double dx = x - tx.x_m;
    double dy = y - tx.y_m;
    double dist = std::hypot(dx, dy);
    double floor = s.grid.resolution_m / 2.0;
    if (dist < floor)
        dist = floor;
    double azimuth = std::atan2(dx, dy) * 180.0 / std::numbers::pi;
    double draw = 0.0;
    double margin = 0.0;
    if (s.propagation.sigma_db > 0.0) {
        if (s.location_margin)
            margin = 1.645 * s.propagation.sigma_db;  // z at 95%
        else
            draw = detail::normal_draw(s.seed, cell_index, tx.id);
    }
    double pl = shadowed_path_loss_db(Distance{dist}, s.propagation,
                                      s.frequency, draw);
    return tx.erp_dbm + tx.antenna.gain_db(azimuth) - pl - margin;
}

inline CellClass classify(double pr_reg, double pr_rogue, const Scenario& s) {
    bool reg_floor = pr_reg >= s.noise_floor_dbm;
    bool rogue_floor = pr_rogue >= s.noise_floor_dbm;
    if (rogue_floor && analytic::can_receive(pr_rogue, pr_reg, s.alpha_rogue_db))
        return CellClass::Rogue;
    if (reg_floor && analytic::can_receive(pr_reg, pr_rogue, s.alpha_reg_db))
        return CellClass::Regular;
    if (!reg_floor && !rogue_floor)
        return CellClass::NoService;
    return pr_rogue >= pr_reg ? CellClass::MushRogueStronger
                              : CellClass::MushRegularStronger;
}

inline GridMap simulate(const Scenario& s, unsigned threads = 0) {
    if (!(s.grid.resolution_m > 0.0))
        throw std::domain_error("grid resolution must be positive");
    s.propagation.validate();
    GridMap m;
    m.scenario = s;
    m.nx = s.grid.nx();
    m.ny = s.grid.ny();
    std::size_t total = m.nx * m.ny;
    if (total == 0)
        throw std::domain_error("empty grid");
    if (total > s.cell_cap)
        throw std::length_error("grid cell count exceeds configured cap");
    m.pr_regular_dbm.resize(total);
    m.pr_rogue_dbm.resize(total);
    m.cls.resize(total);

    auto work = [&](std::size_t y0, std::size_t y1) {
        for (std::size_t iy = y0; iy < y1; ++iy) {
            for (std::size_t ix = 0; ix < m.nx; ++ix) {
                std::size_t i = m.index(ix, iy);
                double x = m.cell_x(ix);
                double y = m.cell_y(iy);
                double pr_reg =
                    s.constant_pr_reg_dbm
                        ? *s.constant_pr_reg_dbm
                        : cell_received_power(s.regular, x, y, s, i);
                double pr_rogue = cell_received_power(s.rogue, x, y, s, i);
                m.pr_regular_dbm[i] = pr_reg;
                m.pr_rogue_dbm[i] = pr_rogue;
                m.cls[i] = classify(pr_reg, pr_rogue, s);
            }
        }
    };

    unsigned n = threads ? threads : std::thread::hardware_concurrency();
    if (n <= 1 || m.ny < 2 * n) {
        work(0, m.ny);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (m.ny + n - 1) / n;
        for (unsigned t = 0; t < n; ++t) {
            std::size_t y0 = t * chunk;
            std::size_t y1 = std::min(m.ny, y0 + chunk);
            if (y0 >= y1)
                break;
            pool.emplace_back(work, y0, y1);
        }
        for (auto& th : pool)
            th.join();
    }
    return m;
}

/// Closed polygon in grid coordinates; even-odd point containment.
struct Polygon {
    std::vector<std::pair<double, double>> vertices;

    bool contains(double x, double y) const {
        bool inside = false;
        std::size_t n = vertices.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            auto [xi, yi] = vertices[i];
            auto [xj, yj] = vertices[j];
            if ((yi > y) != (yj > y) &&
                x < (xj - xi) * (y - yi) / (yj - yi) + xi)
                inside = !inside;
        }
        return inside;
    }
};

struct ClassStats {
    std::size_t total_cells = 0;
    double regular_pct = 0.0;
    double rogue_pct = 0.0;
    double mush_rogue_stronger_pct = 0.0;
    double mush_regular_stronger_pct = 0.0;
    double no_service_pct = 0.0;

    double mush_pct() const {
        return mush_rogue_stronger_pct + mush_regular_stronger_pct;
    }
};

inline ClassStats statistics(const GridMap& m,
                             const Polygon* region = nullptr) {
    std::size_t counts[5] = {0, 0, 0, 0, 0};
    std::size_t total = 0;
    for (std::size_t iy = 0; iy < m.ny; ++iy) {
        for (std::size_t ix = 0; ix < m.nx; ++ix) {
            if (region && !region->contains(m.cell_x(ix), m.cell_y(iy)))
                continue;
            ++counts[static_cast<int>(m.cls[m.index(ix, iy)])];
            ++total;
        }
    }
    if (total == 0)
        throw std::domain_error("statistics region contains no cells");
    ClassStats st;
    st.total_cells = total;
    auto pct = [&](CellClass c) {
        return 100.0 * static_cast<double>(counts[static_cast<int>(c)]) /
               static_cast<double>(total);
    };
    st.regular_pct = pct(CellClass::Regular);
    st.rogue_pct = pct(CellClass::Rogue);
    st.mush_rogue_stronger_pct = pct(CellClass::MushRogueStronger);
    st.mush_regular_stronger_pct = pct(CellClass::MushRegularStronger);
    st.no_service_pct = pct(CellClass::NoService);
    return st;
}

enum class RasterFormat { PGM, CSV };

inline std::uint8_t class_gray(CellClass c) {
    switch (c) {
        case CellClass::Regular: return 200;
        case CellClass::Rogue: return 60;
        case CellClass::MushRogueStronger: return 20;
        case CellClass::MushRegularStronger: return 100;
        case CellClass::NoService: return 255;
    }
    return 0;
}

inline void write_raster(const GridMap& m, std::ostream& os,
                         RasterFormat format) {
    if (format == RasterFormat::PGM) {
        os << "P5\n" << m.nx << ' ' << m.ny << "\n255\n";
        for (CellClass c : m.cls)
            os.put(static_cast<char>(class_gray(c)));
    } else {
        os << "x_m,y_m,pr_reg_dbm,pr_rogue_dbm,class\n";
        char buf[160];
        for (std::size_t iy = 0; iy < m.ny; ++iy) {
            for (std::size_t ix = 0; ix < m.nx; ++ix) {
                std::size_t i = m.index(ix, iy);
                std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.6f,%.6f,%s\n",
                              m.cell_x(ix), m.cell_y(iy), m.pr_regular_dbm[i],
                              m.pr_rogue_dbm[i], to_string(m.cls[i]));
                os << buf;
            }
        }
    }
    if (!os)
        throw std::runtime_error("raster write failed");
}

}  // namespace cca::gridsim

#endif
