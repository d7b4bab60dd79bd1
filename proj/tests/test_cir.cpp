#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "cca/cir.hpp"

using namespace cca::cir;
using Catch::Approx;

namespace {

ImpulseResponseRecord berlin_fixture() {
    // SFN snapshot near the repeater: two towers plus their echoes, the
    // near echo dominating by 21 dB.
    ImpulseResponseRecord rec;
    rec.lat_deg = 52.5026;
    rec.lon_deg = 13.2707;
    rec.paths = {
        {0.0, -21.0, "Alexanderplatz"},
        {12.0, -28.0, "Schaeferberg"},
        {15.0, 0.0, "Alexanderplatz-echo"},
        {27.0, -24.0, "Schaeferberg-echo"},
    };
    return rec;
}

}  // namespace

TEST_CASE("label matching picks the designated pair") {
    auto rec = berlin_fixture();
    AssignmentPolicy policy;
    policy.kind = AssignmentPolicy::LabelMatch;
    policy.original_label = "Alexanderplatz";
    auto a = assign_paths(rec, policy);
    CHECK(rec.paths[a.original_index].label == "Alexanderplatz");
    CHECK(rec.paths[a.echo_index].label == "Alexanderplatz-echo");
    CHECK(margin_db(rec, a) == Approx(21.0));
}

TEST_CASE("two unlabeled paths resolve earlier-original, later-echo") {
    ImpulseResponseRecord rec{0.0, 0.0, {{2.0, 0.0, {}}, {9.0, -4.0, {}}}, {}};
    auto a = assign_paths(rec, AssignmentPolicy{});
    CHECK(a.original_index == 0);
    CHECK(a.echo_index == 1);
}

TEST_CASE("assignment error paths") {
    ImpulseResponseRecord single{0.0, 0.0, {{0.0, 0.0, {}}}, {}};
    CHECK_THROWS_AS(assign_paths(single, AssignmentPolicy{}), InsufficientPaths);

    auto rec = berlin_fixture();
    AssignmentPolicy policy;
    policy.kind = AssignmentPolicy::LabelMatch;
    policy.original_label = "Kreuzberg";
    CHECK_THROWS_AS(assign_paths(rec, policy), AmbiguousAssignment);

    // echo outside the delay window
    ImpulseResponseRecord far{0.0, 0.0, {{0.0, 0.0, {}}, {90.0, -4.0, {}}}, {}};
    AssignmentPolicy narrow;
    narrow.window_us = 50.0;
    CHECK_THROWS_AS(assign_paths(far, narrow), AmbiguousAssignment);
}

TEST_CASE("field-trial fixture classifies as controlled") {
    auto rec = berlin_fixture();
    AssignmentPolicy policy;
    policy.kind = AssignmentPolicy::LabelMatch;
    policy.original_label = "Alexanderplatz";
    auto a = assign_paths(rec, policy);
    CHECK(classify_point(rec, a, 14.1, 14.1) == PointClass::Controlled);
}

TEST_CASE("classification thresholds") {
    ImpulseResponseRecord rec{0.0, 0.0, {{0.0, 0.0, {}}, {5.0, 0.0, {}}}, {}};
    PathAssignment a{1, 0};

    rec.paths[1].rel_power_db = 0.0;
    rec.paths[0].rel_power_db = -21.0;
    CHECK(classify_point(rec, a, 14.1, 14.1) == PointClass::Controlled);

    rec.paths[1].rel_power_db = -20.0;
    rec.paths[0].rel_power_db = 0.0;
    CHECK(classify_point(rec, a, 14.1, 14.1) == PointClass::Regular);

    rec.paths[1].rel_power_db = 0.0;
    rec.paths[0].rel_power_db = 0.0;
    CHECK(classify_point(rec, a, 14.1, 14.1) == PointClass::MushEchoStronger);

    rec.paths[1].rel_power_db = -3.0;
    rec.paths[0].rel_power_db = 0.0;
    CHECK(classify_point(rec, a, 14.1, 14.1) == PointClass::MushOriginalStronger);
}

TEST_CASE("classification depends only on the pair margin") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> power(-40.0, 0.0);
    std::uniform_real_distribution<double> shift(-30.0, 30.0);
    std::uniform_real_distribution<double> alpha(0.0, 25.0);
    for (int i = 0; i < 300; ++i) {
        ImpulseResponseRecord rec{0.0, 0.0,
                                  {{0.0, power(rng), {}}, {7.0, power(rng), {}}},
                                  {}};
        PathAssignment a{1, 0};
        double ar = alpha(rng), ag = alpha(rng);
        auto before = classify_point(rec, a, ar, ag);
        double c = shift(rng);
        for (auto& p : rec.paths)
            p.rel_power_db += c;
        CHECK(classify_point(rec, a, ar, ag) == before);
    }
}

TEST_CASE("classification agrees with the reception condition") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> power(-40.0, 0.0);
    for (int i = 0; i < 300; ++i) {
        ImpulseResponseRecord rec{0.0, 0.0,
                                  {{0.0, power(rng), {}}, {7.0, power(rng), {}}},
                                  {}};
        PathAssignment a{1, 0};
        double echo = rec.paths[1].rel_power_db;
        double orig = rec.paths[0].rel_power_db;
        auto cls = classify_point(rec, a, 14.1, 10.0);
        CHECK((cls == PointClass::Controlled) ==
              cca::analytic::can_receive(echo, orig, 14.1));
        CHECK((cls == PointClass::Regular) ==
              cca::analytic::can_receive(orig, echo, 10.0));
    }
}

TEST_CASE("controlled and regular are mutually exclusive") {
    // whenever alpha_rogue + alpha_reg > 0 the margin cannot satisfy both
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> m(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        double margin = m(rng);
        bool controlled = margin >= 7.0;
        bool regular = -margin >= 3.0;
        CHECK_FALSE((controlled && regular));
    }
}

TEST_CASE("record ingestion validates normalization") {
    CHECK_THROWS_AS(
        parse_record(R"({"lat":0,"lon":0,"paths":[{"delay_us":0,"rel_db":-3}]})"),
        std::domain_error);
    CHECK_THROWS_AS(
        parse_record(R"({"lat":0,"lon":0,"paths":[{"delay_us":-1,"rel_db":0}]})"),
        std::domain_error);
    CHECK_THROWS_AS(
        parse_record(R"({"lat":0,"lon":0,"paths":[]})"), std::domain_error);

    auto rec = parse_record(
        R"({"lat":52.5,"lon":13.3,"paths":[{"delay_us":0,"rel_db":0,"label":"a"},{"delay_us":4,"rel_db":-9}]})");
    CHECK(rec.paths.size() == 2);
    CHECK(rec.paths[0].label == "a");
    CHECK_FALSE(rec.paths[1].label);
}

TEST_CASE("GeoJSON output is structurally valid") {
    std::ostringstream empty;
    emit_geojson({}, empty);
    auto je = nlohmann::json::parse(empty.str());
    CHECK(je.at("type") == "FeatureCollection");
    CHECK(je.at("features").is_array());
    CHECK(je.at("features").empty());

    auto rec = berlin_fixture();
    std::ostringstream os;
    emit_geojson({{rec, PointClass::Controlled, 21.0}}, os);
    auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.at("features").size() == 1);
    const auto& f = j.at("features")[0];
    CHECK(f.at("type") == "Feature");
    CHECK(f.at("geometry").at("type") == "Point");
    const auto& coords = f.at("geometry").at("coordinates");
    REQUIRE(coords.is_array());
    REQUIRE(coords.size() == 2);
    CHECK(coords[0].get<double>() == Approx(13.2707));  // lon first
    CHECK(coords[1].get<double>() == Approx(52.5026));
    CHECK(f.at("properties").at("class") == "controlled");
    CHECK(f.at("properties").at("margin_db").get<double>() == Approx(21.0));
}
