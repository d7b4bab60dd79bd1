// cochannel-atlas command-line frontend.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cca/analytic.hpp"
#include "cca/ccpr.hpp"
#include "cca/cir.hpp"
#include "cca/config.hpp"
#include "cca/gapfiller.hpp"
#include "cca/gridsim.hpp"
#include "cca/link_budget.hpp"
#include "cca/measurement.hpp"
#include "cca/propagation.hpp"

namespace {

using namespace cca;

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value != 0)
        return flag_value;
    if (const char* env = std::getenv("COCHANNEL_ATLAS_THREADS"))
        return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    return 0;  // auto
}

analytic::AttackGeometry make_geometry(double pt_dbm, double pr_reg_dbm,
                                       double f_mhz, double n, double alpha,
                                       double d0_m) {
    analytic::AttackGeometry g{pt_dbm, pr_reg_dbm, alpha, 0.0,
                               PropagationParams{}, Frequency{f_mhz}};
    g.params.model = PathLossModel::LogDistance;
    g.params.d0_m = d0_m;
    g.params.exponent = n;
    return g;
}

nlohmann::json stats_json(const gridsim::ClassStats& st) {
    return {
        {"regular_pct", st.regular_pct},
        {"rogue_pct", st.rogue_pct},
        {"mush_pct", st.mush_pct()},
        {"mush_rogue_stronger_pct", st.mush_rogue_stronger_pct},
        {"mush_regular_stronger_pct", st.mush_regular_stronger_pct},
        {"no_service_pct", st.no_service_pct},
    };
}

void write_file(const std::string& path, const std::string& content,
                bool binary = false) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
    if (!os)
        throw std::runtime_error("write to " + path + " failed");
}

struct ReproCheck {
    std::string name;
    double computed;
    double expected;
    double tolerance;
    bool pass() const { return std::fabs(computed - expected) <= tolerance; }
};

int cmd_reproduce(bool as_json, const std::string& source_name) {
    using ccpr::Source;
    const auto& table = ccpr::Table::instance();
    Source source = ccpr::parse_source(source_name);

    std::vector<ReproCheck> checks;
    auto geom = make_geometry(30.0, -50.0, 500.0, 2.0, 0.0, 1.0);
    double d477 = analytic::max_attack_radius(geom).d_rogue_m;
    checks.push_back({"attack_range_no_ccpr_m", d477, 477.0, 1.0});

    ccpr::CcprKey common{ccpr::Standard::DvbT, ccpr::Modulation::QAM16,
                         ccpr::CodeRate::R2_3, ccpr::Channel::Gaussian, source};
    auto alpha = table.lookup(common);
    if (!alpha)
        throw std::runtime_error("no CCPR value for 16QAM 2/3 Gaussian in "
                                 "requested source");
    geom.alpha_rogue_db = *alpha;
    double d_ccpr = analytic::max_attack_radius(geom).d_rogue_m;
    if (source == Source::M2) {
        checks.push_back({"attack_range_16qam23_m", d_ccpr, 151.0, 1.0});
        checks.push_back({"controlled_area_km2",
                          analytic::controlled_area_m2(d_ccpr) / 1e6, 0.0716,
                          0.001});
    } else {
        std::fprintf(stderr, "info: with source %s (alpha %.1f dB) the range "
                             "becomes %.1f m\n",
                     source_name.c_str(), *alpha, d_ccpr);
    }

    checks.push_back({"mush_multiple_16qam23",
                      1.0 / analytic::area_fraction(10.0, 10.0, 2.0) - 1.0,
                      99.0, 1e-9});

    double pn = link_budget::noise_power_dbw(7.0, link_budget::kDefaultBandwidthHz);
    checks.push_back({"noise_power_dbw", pn, -128.16, 0.01});
    const double cns[4] = {15.5, 12.7, 4.8, 7.1};
    const double ps[4] = {-82.66, -85.46, -93.36, -91.06};
    const char* names[4] = {"ps_min_64qam_dbm", "ps_min_16qam_dbm",
                            "ps_min_qpsk_rice_dbm", "ps_min_qpsk_rayleigh_dbm"};
    for (int i = 0; i < 4; ++i)
        checks.push_back({names[i],
                          link_budget::min_input_power_dbm(
                              7.0, link_budget::kDefaultBandwidthHz, cns[i]),
                          ps[i], 0.01});

    auto robust = table.most_robust_mode(ccpr::Standard::DvbT,
                                         ccpr::Channel::Gaussian, Source::M2);
    checks.push_back({"most_robust_ccpr_db", robust.second, 2.5, 1e-9});

    gapfiller::GapFillerSpec gf{-77.0, -7.0, 11.0, 42.0, {}};
    auto ev = gapfiller::evaluate(gf, {-58.4, -38.8, -69.6}, 15.5);
    checks.push_back({"gapfiller_margin_db", ev.margin_db, 19.6, 1e-9});
    checks.push_back({"gapfiller_success",
                      ev.verdict == gapfiller::Verdict::Success ? 1.0 : 0.0,
                      1.0, 0.0});

    auto est = measurement::run_measurement(
        measurement::ReceiverModel::symmetric(10.0),
        measurement::MeasurementRun{-40.0, -10.0, -70.0, 1.0, 10});
    checks.push_back({"measured_ccpr_quantized_db", est.estimate_db, 10.5, 0.5});

    cir::ImpulseResponseRecord rec{52.5, 13.27,
                                   {{0.0, -21.0, std::nullopt},
                                    {5.0, 0.0, std::nullopt}},
                                   std::nullopt};
    auto assign = cir::assign_paths(rec, cir::AssignmentPolicy{});
    auto cls = cir::classify_point(rec, assign, 14.1, 14.1);
    checks.push_back({"cir_fixture_controlled",
                      cls == cir::PointClass::Controlled ? 1.0 : 0.0, 1.0, 0.0});

    // small analytic-vs-grid cross check
    gridsim::Scenario sc;
    sc.regular = {"reg", -1e5, 0.0, 90.0, gridsim::Antenna::omni(), "", {}};
    sc.rogue = {"rogue", 0.0, 0.0, 30.0, gridsim::Antenna::omni(), "", {}};
    sc.frequency = Frequency{500.0};
    sc.propagation.model = PathLossModel::FSPL;
    sc.alpha_reg_db = 10.0;
    sc.alpha_rogue_db = 10.0;
    sc.constant_pr_reg_dbm = -50.0;
    sc.grid = {-400.0, -400.0, 800.0, 800.0, 4.0};
    auto m = gridsim::simulate(sc);
    double max_rogue_r = 0.0;
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix)
            if (m.cls[m.index(ix, iy)] == gridsim::CellClass::Rogue)
                max_rogue_r = std::max(
                    max_rogue_r, std::hypot(m.cell_x(ix), m.cell_y(iy)));
    checks.push_back({"grid_rogue_disc_radius_m", max_rogue_r, 151.0, 5.0});

    bool all_pass = true;
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass();
            out.push_back({{"check", c.name},
                           {"computed", c.computed},
                           {"expected", c.expected},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass()}});
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass();
            std::printf("%-28s %-4s computed=%.4f expected=%.4f tol=%.4g\n",
                        c.name.c_str(), c.pass() ? "PASS" : "FAIL", c.computed,
                        c.expected, c.tolerance);
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terrestrial broadcast overpowering analysis toolkit"};
    app.require_subcommand(1);

    // ---- range ----
    double pt = 30.0, pr_reg = -50.0, f_mhz = 500.0, n = 2.0, alpha_flag = 0.0;
    double d0 = 1.0;
    bool pt_is_dbw = false, csv_out = false;
    auto* range = app.add_subcommand("range", "Maximum attack radius");
    range->add_option("--pt", pt, "Rogue transmit power (dBm)");
    range->add_flag("--pt-dbw", pt_is_dbw, "Interpret --pt as dBW");
    range->add_option("--pr-reg", pr_reg, "Regular signal level (dBm)");
    range->add_option("--f", f_mhz, "Frequency (MHz)");
    range->add_option("--n", n, "Path-loss exponent");
    range->add_option("--alpha", alpha_flag, "Rogue CCPR (dB)");
    range->add_option("--d0", d0, "Reference distance (m)");
    range->add_flag("--csv", csv_out, "Single-line CSV output");

    // ---- power ----
    double radius = 151.0;
    auto* power = app.add_subcommand("power", "Required rogue power for a radius");
    power->add_option("--d", radius, "Controlled radius (m)")->required();
    power->add_option("--pr-reg", pr_reg, "Regular signal level (dBm)");
    power->add_option("--f", f_mhz, "Frequency (MHz)");
    power->add_option("--n", n, "Path-loss exponent");
    power->add_option("--alpha", alpha_flag, "Rogue CCPR (dB)");
    power->add_option("--d0", d0, "Reference distance (m)");
    power->add_flag("--csv", csv_out, "Single-line CSV output");

    // ---- mush-ratio ----
    double alpha_rogue = 10.0, alpha_reg = 10.0;
    auto* mush = app.add_subcommand("mush-ratio",
                                    "Controlled/affected area fraction");
    mush->add_option("--alpha-rogue", alpha_rogue, "Rogue CCPR (dB)");
    mush->add_option("--alpha-reg", alpha_reg, "Regular CCPR (dB)");
    mush->add_option("--n", n, "Path-loss exponent");
    mush->add_flag("--csv", csv_out, "Single-line CSV output");

    // ---- linkbudget ----
    double noise_figure = 7.0, bandwidth_hz = cca::link_budget::kDefaultBandwidthHz;
    double cn = 15.5;
    auto* lb = app.add_subcommand("linkbudget",
                                  "Receiver noise power and sensitivity");
    lb->add_option("--noise-figure", noise_figure, "Receiver noise figure (dB)");
    lb->add_option("--bandwidth", bandwidth_hz, "Noise bandwidth (Hz)");
    lb->add_option("--cn", cn, "Required C/N (dB)");

    // ---- export-ccpr ----
    std::string out_path;
    auto* exp = app.add_subcommand("export-ccpr",
                                   "Dump the embedded protection-ratio table");
    exp->add_option("--out", out_path, "Output CSV path (default stdout)");

    // ---- simulate ----
    std::string config_path, raster_override, stats_override;
    unsigned threads = 0;
    auto* sim = app.add_subcommand("simulate", "Grid coverage simulation");
    sim->add_option("--config", config_path, "Scenario JSON document")
        ->required();
    sim->add_option("--raster", raster_override, "Raster output path override");
    sim->add_option("--stats", stats_override, "Stats JSON path override");
    sim->add_option("--threads", threads,
                    "Worker threads (0 = auto; env COCHANNEL_ATLAS_THREADS)");

    // ---- gapfiller ----
    double in_min = -77.0, in_max = -7.0, p_rbv = -58.4, p_rav = -38.8;
    double p_rba = -69.6, gf_alpha = 15.5;
    auto* gf = app.add_subcommand("gapfiller", "Repeater capture feasibility");
    gf->add_option("--input-min", in_min, "Repeater minimum input (dBm)");
    gf->add_option("--input-max", in_max, "Repeater maximum input (dBm)");
    gf->add_option("--p-rbv", p_rbv, "Broadcaster level at repeater (dBm)");
    gf->add_option("--p-rav", p_rav, "Attacker level at repeater (dBm)");
    gf->add_option("--p-rba", p_rba, "Broadcaster level at attacker (dBm)");
    gf->add_option("--alpha", gf_alpha, "Capture threshold (dB)");

    // ---- measure-sim ----
    double true_ccpr = 10.0, step = 1.0, p_fixed = -40.0, start_margin = 20.0;
    int dwell = 10, repeats = 1;
    std::string trace_path;
    auto* ms = app.add_subcommand("measure-sim",
                                  "Simulated stepped-power CCPR measurement");
    ms->add_option("--true-ccpr", true_ccpr, "Ground-truth receiver CCPR (dB)");
    ms->add_option("--step", step, "Power decrement per step (dB)");
    ms->add_option("--dwell", dwell, "Lock criterion, ticks");
    ms->add_option("--repeats", repeats, "Number of repeated runs");
    ms->add_option("--p-fixed", p_fixed, "Reference transmitter power (dBm)");
    ms->add_option("--start-margin", start_margin,
                   "Start power above reference + CCPR (dB)");
    ms->add_option("--trace", trace_path, "CSV trace output path");

    // ---- cir-classify ----
    std::string cir_in, cir_out, cir_label;
    double cir_alpha_rogue = 14.1, cir_alpha_reg = 14.1;
    double expected_delay = 0.0, delay_window = 1e9;
    auto* cir_cmd = app.add_subcommand(
        "cir-classify", "Classify channel-impulse-response measurements");
    cir_cmd->add_option("--input", cir_in, "NDJSON records")->required();
    cir_cmd->add_option("--alpha-rogue", cir_alpha_rogue, "Rogue CCPR (dB)");
    cir_cmd->add_option("--alpha-reg", cir_alpha_reg, "Regular CCPR (dB)");
    cir_cmd->add_option("--out", cir_out, "GeoJSON output path")->required();
    cir_cmd->add_option("--label", cir_label,
                        "Original-path label (enables label matching)");
    cir_cmd->add_option("--expected-delay", expected_delay,
                        "Expected original-path delay (us)");
    cir_cmd->add_option("--delay-window", delay_window,
                        "Maximum echo lag (us)");

    // ---- reproduce ----
    bool repro_json = false;
    std::string repro_source = "M2";
    auto* repro = app.add_subcommand("reproduce",
                                     "Re-run the built-in headline scenarios");
    repro->add_flag("--json", repro_json, "Machine-readable report");
    repro->add_option("--ccpr-source", repro_source,
                      "Protection-ratio source (M1, M2, Reimers, ETSI, ITU)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*range) {
            if (pt_is_dbw)
                pt = cca::PowerLevel::from_dbw(pt).dbm;
            auto g = make_geometry(pt, pr_reg, f_mhz, n, alpha_flag, d0);
            auto r = cca::analytic::max_attack_radius(g);
            double area_km2 = cca::analytic::controlled_area_m2(r.d_rogue_m) / 1e6;
            if (csv_out)
                std::printf("%.3f,%.6f,%d\n", r.d_rogue_m, area_km2,
                            r.sub_reference ? 1 : 0);
            else if (r.sub_reference)
                std::printf("infeasible: radius %.1f m is below d0 = %.1f m\n",
                            r.d_rogue_m, d0);
            else
                std::printf("%.0f m (controlled area %.4f km2)\n", r.d_rogue_m,
                            area_km2);
        } else if (*power) {
            auto g = make_geometry(0.0, pr_reg, f_mhz, n, alpha_flag, d0);
            double p = cca::analytic::required_power_dbm(radius, g);
            if (csv_out)
                std::printf("%.4f\n", p);
            else
                std::printf("%.2f dBm\n", p);
        } else if (*mush) {
            double fraction = cca::analytic::area_fraction(alpha_rogue, alpha_reg, n);
            double multiple = 1.0 / fraction - 1.0;
            if (csv_out)
                std::printf("%.10g,%.10g\n", fraction, multiple);
            else
                std::printf("controlled_fraction=%.10g mush_multiple=%.1f\n",
                            fraction, multiple);
        } else if (*lb) {
            double pn = cca::link_budget::noise_power_dbw(noise_figure, bandwidth_hz);
            double ps = cca::link_budget::min_input_power_dbm(noise_figure,
                                                              bandwidth_hz, cn);
            std::printf("Pn = %.2f dBW\nPs_min = %.2f dBm\n", pn, ps);
        } else if (*exp) {
            std::ostringstream os;
            cca::ccpr::Table::instance().export_csv(os);
            if (out_path.empty())
                std::cout << os.str();
            else
                write_file(out_path, os.str());
        } else if (*sim) {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "error: cannot read %s\n",
                             config_path.c_str());
                return 2;
            }
            nlohmann::json doc = nlohmann::json::parse(in);
            auto cfg = cca::config::parse_config(doc);
            auto m = cca::gridsim::simulate(cfg.scenario, resolve_threads(threads));
            auto st = cca::gridsim::statistics(m);
            if (!raster_override.empty())
                cfg.output.raster_path = raster_override;
            if (!stats_override.empty())
                cfg.output.stats_path = stats_override;
            if (cfg.output.raster_path) {
                std::ostringstream os;
                cca::gridsim::write_raster(m, os, cfg.output.raster_format);
                write_file(*cfg.output.raster_path, os.str(), true);
            }
            std::string stats_text = stats_json(st).dump(2) + "\n";
            if (cfg.output.stats_path)
                write_file(*cfg.output.stats_path, stats_text);
            else
                std::cout << stats_text;
        } else if (*gf) {
            cca::gapfiller::GapFillerSpec spec{in_min, in_max, 11.0, 42.0, {}};
            auto ev = cca::gapfiller::evaluate(spec, {p_rbv, p_rav, p_rba},
                                               gf_alpha);
            nlohmann::json out = {
                {"verdict", cca::gapfiller::to_string(ev.verdict)},
                {"margin_db", ev.margin_db},
                {"combined_input_dbm", ev.combined_input_dbm},
            };
            std::cout << out.dump(2) << '\n';
        } else if (*ms) {
            auto rx = cca::measurement::ReceiverModel::symmetric(true_ccpr);
            cca::measurement::MeasurementRun cfg{
                p_fixed, p_fixed + true_ccpr + start_margin,
                p_fixed - true_ccpr - start_margin, step, dwell};
            std::vector<double> estimates;
            cca::measurement::EstimatedCcpr last{};
            for (int i = 0; i < repeats; ++i) {
                last = cca::measurement::run_measurement(rx, cfg);
                estimates.push_back(last.estimate_db);
            }
            std::sort(estimates.begin(), estimates.end());
            std::printf("estimate_db min=%.3f median=%.3f max=%.3f\n",
                        estimates.front(), estimates[estimates.size() / 2],
                        estimates.back());
            if (!trace_path.empty()) {
                std::ostringstream os;
                os << "step_index,p_rogue_dbm,ratio_db,state\n";
                for (const auto& t : last.trace) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%d,%.3f,%.3f,%s\n",
                                  t.step_index, t.p_rogue_dbm, t.ratio_db,
                                  cca::measurement::to_string(t.state));
                    os << buf;
                }
                write_file(trace_path, os.str());
            }
        } else if (*cir_cmd) {
            std::ifstream in(cir_in);
            if (!in) {
                std::fprintf(stderr, "error: cannot read %s\n", cir_in.c_str());
                return 2;
            }
            auto records = cca::cir::read_records(in);
            cca::cir::AssignmentPolicy policy;
            if (!cir_label.empty()) {
                policy.kind = cca::cir::AssignmentPolicy::LabelMatch;
                policy.original_label = cir_label;
            } else {
                policy.expected_delay_us = expected_delay;
                policy.window_us = delay_window;
            }
            std::vector<cca::cir::ClassifiedPoint> points;
            for (auto& rec : records) {
                auto a = cca::cir::assign_paths(rec, policy);
                auto cls = cca::cir::classify_point(rec, a, cir_alpha_rogue,
                                                    cir_alpha_reg);
                points.push_back({rec, cls, cca::cir::margin_db(rec, a)});
            }
            std::ostringstream os;
            cca::cir::emit_geojson(points, os);
            write_file(cir_out, os.str());
        } else if (*repro) {
            return cmd_reproduce(repro_json, repro_source);
        }
    } catch (const cca::config::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
