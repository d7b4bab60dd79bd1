#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "cca/analytic.hpp"
#include "cca/gridsim.hpp"

using namespace cca;
using namespace cca::gridsim;
using Catch::Approx;

namespace {

Scenario flat_scenario() {
    Scenario s;
    s.regular = {"reg", -5000.0, 0.0, 60.0, Antenna::omni(), "", {}};
    s.rogue = {"rogue", 0.0, 0.0, 30.0, Antenna::omni(), "", {}};
    s.frequency = Frequency{500.0};
    s.propagation.model = PathLossModel::FSPL;
    s.alpha_reg_db = 10.0;
    s.alpha_rogue_db = 10.0;
    s.constant_pr_reg_dbm = -50.0;
    s.grid = {-400.0, -400.0, 800.0, 800.0, 5.0};
    return s;
}

}  // namespace

TEST_CASE("simulated rogue disc matches the closed-form radius") {
    Scenario s = flat_scenario();
    GridMap m = simulate(s);

    analytic::AttackGeometry g{30.0, -50.0, 10.0, 10.0, s.propagation,
                               s.frequency};
    g.params.model = PathLossModel::LogDistance;
    g.params.d0_m = 1.0;
    double expected = analytic::max_attack_radius(g).d_rogue_m;

    double max_rogue = 0.0;
    double min_non_rogue = 1e9;
    for (std::size_t iy = 0; iy < m.ny; ++iy) {
        for (std::size_t ix = 0; ix < m.nx; ++ix) {
            double r = std::hypot(m.cell_x(ix), m.cell_y(iy));
            if (m.cls[m.index(ix, iy)] == CellClass::Rogue)
                max_rogue = std::max(max_rogue, r);
            else
                min_non_rogue = std::min(min_non_rogue, r);
        }
    }
    CHECK(max_rogue == Approx(expected).margin(s.grid.resolution_m));
    CHECK(min_non_rogue >= expected - s.grid.resolution_m);
}

TEST_CASE("degenerate rogue produces no rogue or mush cells") {
    Scenario s = flat_scenario();
    s.rogue.erp_dbm = -170.0;  // 200 dB below the regular ERP
    GridMap m = simulate(s);
    for (CellClass c : m.cls)
        CHECK(c == CellClass::Regular);
}

TEST_CASE("co-located identical transmitters yield all-mush coverage") {
    Scenario s = flat_scenario();
    s.constant_pr_reg_dbm.reset();
    s.regular = s.rogue;
    s.regular.id = "reg";
    GridMap m = simulate(s);
    for (CellClass c : m.cls)
        CHECK(c == CellClass::MushRogueStronger);  // equal-strength tie rule
}

TEST_CASE("classification along a ray is Rogue, Mush, then Regular") {
    Scenario s = flat_scenario();
    s.grid = {0.0, -2.5, 2000.0, 5.0, 5.0};  // a single row through the rogue
    GridMap m = simulate(s);
    REQUIRE(m.ny == 1);
    int phase = 0;  // 0=rogue 1=mush 2=regular
    for (std::size_t ix = 0; ix < m.nx; ++ix) {
        CellClass c = m.cls[m.index(ix, 0)];
        int want;
        switch (c) {
            case CellClass::Rogue: want = 0; break;
            case CellClass::MushRogueStronger:
            case CellClass::MushRegularStronger: want = 1; break;
            case CellClass::Regular: want = 2; break;
            default: want = -1; break;
        }
        REQUIRE(want >= 0);
        CHECK(want >= phase);
        phase = want;
    }
    CHECK(phase == 2);  // the ray reaches regular service again
}

TEST_CASE("rogue and regular cells are separated by mush along rays") {
    Scenario s = flat_scenario();
    s.grid = {0.0, -2.5, 2000.0, 5.0, 5.0};
    GridMap m = simulate(s);
    for (std::size_t ix = 0; ix + 1 < m.nx; ++ix) {
        CellClass a = m.cls[m.index(ix, 0)];
        CellClass b = m.cls[m.index(ix + 1, 0)];
        bool adjacent_extremes =
            (a == CellClass::Rogue && b == CellClass::Regular) ||
            (a == CellClass::Regular && b == CellClass::Rogue);
        CHECK_FALSE(adjacent_extremes);
    }
}

TEST_CASE("determinism: identical scenario and seed give identical maps") {
    Scenario s = flat_scenario();
    s.propagation.sigma_db = 5.5;
    s.seed = 1234;
    GridMap a = simulate(s, 1);
    GridMap b = simulate(s, 4);  // thread count must not affect the result
    CHECK(a.pr_rogue_dbm == b.pr_rogue_dbm);
    CHECK(a.pr_regular_dbm == b.pr_regular_dbm);
    CHECK(a.cls == b.cls);

    s.seed = 1235;
    GridMap c = simulate(s);
    CHECK(a.pr_rogue_dbm != c.pr_rogue_dbm);
}

TEST_CASE("location-variability margin is deterministic and pessimistic") {
    Scenario s = flat_scenario();
    s.propagation.sigma_db = 5.5;
    s.location_margin = true;
    GridMap a = simulate(s);
    GridMap b = simulate(s);
    CHECK(a.pr_rogue_dbm == b.pr_rogue_dbm);

    Scenario plain = flat_scenario();
    GridMap c = simulate(plain);
    for (std::size_t i = 0; i < a.pr_rogue_dbm.size(); ++i)
        CHECK(a.pr_rogue_dbm[i] ==
              Approx(c.pr_rogue_dbm[i] - 1.645 * 5.5).margin(1e-9));
}

TEST_CASE("noise floor produces no-service cells") {
    Scenario s = flat_scenario();
    s.constant_pr_reg_dbm.reset();
    s.regular.erp_dbm = -170.0;
    s.rogue.erp_dbm = 0.0;
    s.noise_floor_dbm = -60.0;
    GridMap m = simulate(s);
    bool saw_rogue = false, saw_none = false;
    for (CellClass c : m.cls) {
        if (c == CellClass::Rogue)
            saw_rogue = true;
        if (c == CellClass::NoService)
            saw_none = true;
        CHECK((c == CellClass::Rogue || c == CellClass::NoService));
    }
    CHECK(saw_rogue);
    CHECK(saw_none);
}

TEST_CASE("directive antenna pattern") {
    Antenna a = Antenna::directive_at(0.0, 60.0, 20.0);
    CHECK(a.gain_db(0.0) == 0.0);
    CHECK(a.gain_db(29.9) == 0.0);
    CHECK(a.gain_db(180.0) == Approx(-20.0));
    CHECK(a.gain_db(-170.0) == Approx(-20.0));
    // taper midpoint
    CHECK(a.gain_db(35.0) == Approx(-10.0).margin(1e-9));
    CHECK_THROWS_AS(Antenna::directive_at(0.0, 0.0, 20.0), std::domain_error);
    CHECK_THROWS_AS(Antenna::directive_at(0.0, 360.0, 20.0), std::domain_error);
}

TEST_CASE("statistics partition sums to 100 percent") {
    Scenario s = flat_scenario();
    GridMap m = simulate(s);
    ClassStats st = statistics(m);
    double sum = st.regular_pct + st.rogue_pct + st.mush_pct() +
                 st.no_service_pct;
    CHECK(sum == Approx(100.0).margin(1e-9));
    CHECK(st.total_cells == m.nx * m.ny);
}

TEST_CASE("statistics over a polygon region") {
    Scenario s = flat_scenario();
    GridMap m = simulate(s);
    // a small square well inside the rogue disc
    Polygon square{{{-20.0, -20.0}, {20.0, -20.0}, {20.0, 20.0}, {-20.0, 20.0}}};
    ClassStats st = statistics(m, &square);
    CHECK(st.rogue_pct == Approx(100.0));

    Polygon outside{{{9000.0, 9000.0}, {9010.0, 9000.0}, {9010.0, 9010.0}}};
    CHECK_THROWS_AS(statistics(m, &outside), std::domain_error);
}

TEST_CASE("grid cell cap is enforced") {
    Scenario s = flat_scenario();
    s.cell_cap = 100;
    CHECK_THROWS_AS(simulate(s), std::length_error);
}

TEST_CASE("PGM raster uses the fixed class-to-gray mapping") {
    GridMap m;
    m.scenario = flat_scenario();
    m.scenario.grid = {0.0, 0.0, 10.0, 10.0, 5.0};
    m.nx = 2;
    m.ny = 2;
    m.pr_regular_dbm.assign(4, -50.0);
    m.pr_rogue_dbm.assign(4, -120.0);
    m.cls.assign(4, CellClass::Regular);
    std::ostringstream os(std::ios::binary);
    write_raster(m, os, RasterFormat::PGM);
    std::string expect = "P5\n2 2\n255\n";
    expect += std::string(4, static_cast<char>(200));
    CHECK(os.str() == expect);
}

TEST_CASE("CSV raster round-trips the classification") {
    Scenario s = flat_scenario();
    s.grid = {-100.0, -100.0, 200.0, 200.0, 10.0};
    GridMap m = simulate(s);
    std::ostringstream os;
    write_raster(m, os, RasterFormat::CSV);

    std::istringstream in(os.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "x_m,y_m,pr_reg_dbm,pr_rogue_dbm,class");
    std::size_t i = 0;
    while (std::getline(in, line)) {
        auto last_comma = line.rfind(',');
        REQUIRE(i < m.cls.size());
        CHECK(line.substr(last_comma + 1) == to_string(m.cls[i]));
        ++i;
    }
    CHECK(i == m.cls.size());
}

TEST_CASE("raster output is byte-identical across runs") {
    Scenario s = flat_scenario();
    s.propagation.sigma_db = 3.0;
    s.seed = 42;
    std::ostringstream a(std::ios::binary), b(std::ios::binary);
    write_raster(simulate(s), a, RasterFormat::PGM);
    write_raster(simulate(s), b, RasterFormat::PGM);
    CHECK(a.str() == b.str());
}
