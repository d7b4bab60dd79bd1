#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cca/analytic.hpp"

using namespace cca;
using namespace cca::analytic;
using Catch::Approx;

namespace {

AttackGeometry reference_case(double alpha) {
    AttackGeometry g{30.0, -50.0, alpha, 0.0, PropagationParams{},
                     Frequency{500.0}};
    g.params.model = PathLossModel::LogDistance;
    g.params.d0_m = 1.0;
    g.params.exponent = 2.0;
    return g;
}

}  // namespace

TEST_CASE("reception condition uses a non-strict threshold") {
    CHECK(can_receive(-47.0, -70.0, 15.0));  // 23 dB margin
    CHECK(can_receive(-50.0, -50.0, 0.0));   // boundary equality
    CHECK_FALSE(can_receive(-60.0, -50.0, 10.0));
}

TEST_CASE("attack range without protection ratio is 477 m") {
    auto r = max_attack_radius(reference_case(0.0));
    CHECK_FALSE(r.sub_reference);
    CHECK(r.d_rogue_m == Approx(477.0).margin(1.0));
}

TEST_CASE("attack range with 10 dB protection ratio is 151 m") {
    auto r = max_attack_radius(reference_case(10.0));
    CHECK(r.d_rogue_m == Approx(151.0).margin(1.0));
}

TEST_CASE("zero power margin lands exactly on d0") {
    auto g = reference_case(0.0);
    double pl0 = reference_loss_db(g.params, g.frequency);
    g.pt_rogue_dbm = g.pr_reg_dbm + g.alpha_rogue_db + pl0;
    auto r = max_attack_radius(g);
    CHECK(r.d_rogue_m == Approx(g.params.d0_m).epsilon(1e-12));
    CHECK_FALSE(r.sub_reference);
}

TEST_CASE("sub-reference radius is reported, not clamped") {
    auto g = reference_case(0.0);
    g.params.d0_m = 1000.0;  // pl0 from FSPL at 1 km leaves no margin
    auto r = max_attack_radius(g);
    CHECK(r.sub_reference);
    CHECK(r.d_rogue_m < g.params.d0_m);
}

TEST_CASE("controlled areas for the revised ranges") {
    CHECK(controlled_area_m2(151.0) / 1e6 == Approx(0.0716).margin(0.001));
    CHECK(controlled_area_m2(477.0) / 1e6 == Approx(0.71).margin(0.01));
    CHECK(controlled_area_m2(0.0) == 0.0);
}

TEST_CASE("required power inverts the range formula") {
    auto g = reference_case(10.0);
    CHECK(required_power_dbm(151.0, g) == Approx(30.0).margin(0.05));
    double pl0 = reference_loss_db(g.params, g.frequency);
    CHECK(required_power_dbm(g.params.d0_m, g) ==
          Approx(g.pr_reg_dbm + g.alpha_rogue_db + pl0).epsilon(1e-12));
    CHECK_THROWS_AS(required_power_dbm(0.5, g), std::domain_error);
}

TEST_CASE("doubling the radius costs 10 n log10 2") {
    for (double n : {2.0, 2.7, 3.5}) {
        auto g = reference_case(10.0);
        g.params.exponent = n;
        double delta = required_power_dbm(300.0, g) - required_power_dbm(150.0, g);
        CHECK(delta == Approx(10.0 * n * std::log10(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("range and power round-trip to 1e-9 relative") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> radius_dist(1.0, 1e5);
    std::uniform_real_distribution<double> n_dist(2.0, 4.35);
    std::uniform_real_distribution<double> alpha_dist(0.0, 25.0);
    for (int i = 0; i < 200; ++i) {
        auto g = reference_case(alpha_dist(rng));
        g.params.exponent = n_dist(rng);
        double d = radius_dist(rng);
        g.pt_rogue_dbm = required_power_dbm(d, g);
        auto r = max_attack_radius(g);
        CHECK(r.d_rogue_m == Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("range monotonicity in power, protection ratio, and exponent") {
    auto g = reference_case(10.0);
    double base = max_attack_radius(g).d_rogue_m;

    auto g2 = g;
    g2.pt_rogue_dbm += 5.0;
    CHECK(max_attack_radius(g2).d_rogue_m > base);

    g2 = g;
    g2.alpha_rogue_db += 5.0;
    CHECK(max_attack_radius(g2).d_rogue_m < base);

    g2 = g;
    g2.pr_reg_dbm += 5.0;
    CHECK(max_attack_radius(g2).d_rogue_m < base);

    // positive margin: higher n shrinks the radius
    g2 = g;
    g2.params.exponent = 3.0;
    CHECK(max_attack_radius(g2).d_rogue_m < base);
}

TEST_CASE("radius ratio and area fraction") {
    CHECK(radius_ratio(0.0, 0.0, 2.0) == Approx(1.0));
    CHECK(area_fraction(0.0, 0.0, 3.3) == Approx(1.0));

    // same mode both sides, 10 dB each: mush is 99x the controlled area
    double ratio = radius_ratio(10.0, 10.0, 2.0);
    CHECK(ratio * ratio == Approx(0.01).epsilon(1e-12));
    CHECK(area_fraction(10.0, 10.0, 2.0) == Approx(0.01).epsilon(1e-12));

    // robust rogue mode vs 16-QAM 2/3 broadcast
    double r2 = radius_ratio(2.5, 10.0, 2.0);
    CHECK(r2 * r2 == Approx(std::pow(10.0, -12.5 / 10.0)).epsilon(1e-12));
}

TEST_CASE("area fraction equals radius ratio squared") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alpha(0.0, 29.0);
    std::uniform_real_distribution<double> n_dist(1.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        double ar = alpha(rng), ag = alpha(rng), n = n_dist(rng);
        double r = radius_ratio(ar, ag, n);
        CHECK(std::fabs(area_fraction(ar, ag, n) - r * r) < 1e-12);
    }
}

TEST_CASE("controlled fraction grows with the exponent") {
    // halving the decay exponent squares the fraction
    double f2 = area_fraction(2.5 + 10.0, 0.0, 2.0);
    double f4 = area_fraction(2.5 + 10.0, 0.0, 4.0);
    CHECK(f4 == Approx(std::sqrt(f2)).epsilon(1e-12));

    double prev = 0.0;
    for (double n : {2.0, 2.5, 3.0, 3.5, 4.0, 4.35}) {
        double f = area_fraction(10.0, 10.0, n);
        CHECK(f > prev);
        prev = f;
    }
}
