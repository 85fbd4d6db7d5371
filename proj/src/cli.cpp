#include "sipsim/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "sipsim/catalog.hpp"
#include "sipsim/error.hpp"
#include "sipsim/pipeline.hpp"
#include "sipsim/plots.hpp"
#include "sipsim/report.hpp"
#include "sipsim/scenario.hpp"

#ifndef SIPSIM_VERSION
#define SIPSIM_VERSION "0.0.0"
#endif

namespace sipsim {

namespace {

struct Options {
    std::string scenario;
    std::string output_dir = "sipsim-out";
    std::string data_dir;
    std::vector<std::string> overrides;
    int verbosity = 0;
    int threads = 0;
    bool reference = false;
};

void print_catalog(const DataCatalog& catalog, std::ostream& out) {
    fmt::print(out, "constellations:\n");
    for (const auto& c : catalog.constellations.entries()) {
        const std::string latency = c.baseline_latency_ms ? fmt::format("{:g} ms", *c.baseline_latency_ms) : "-";
        fmt::print(out, "  {:<16} {:>5} sats  {} shell{}  min elevation {:g} deg  baseline latency {}\n", c.name,
                   c.satellite_count(), c.shells.size(), c.shells.size() == 1 ? "" : "s", c.min_elevation_deg,
                   latency);
    }
    fmt::print(out, "terminals:\n");
    for (const auto& t : catalog.terminals.terminals()) {
        fmt::print(out, "  {:<30} {}  EIRP {:>5.1f} dBW  G/T {:>5} dB/K  {:<6} {:g} kg\n", t.name, to_string(t.band),
                   t.eirp_dbw, t.g_over_t_dbk ? fmt::format("{:.1f}", *t.g_over_t_dbk) : "-", to_string(t.steering),
                   t.mass_kg);
    }
    fmt::print(out, "link payloads:\n");
    for (const auto& p : catalog.terminals.payloads()) {
        fmt::print(out, "  {:<30} EIRP {:>5.1f} dBW  G/T {:>5.1f} dB/K\n", p.name, p.eirp_dbw, p.g_over_t_dbk);
    }
    fmt::print(out, "providers:\n");
    for (const auto& p : catalog.terminals.providers()) {
        fmt::print(out, "  {:<16} DL EIRP {:g} dBW @ {:g} GHz / {:g} MHz  UL G/T {:g} dB/K @ {:g} GHz / {:g} MHz\n",
                   p.name, p.downlink_eirp_dbw, p.downlink_frequency_hz / 1e9, p.downlink_bandwidth_hz / 1e6,
                   p.uplink_g_over_t_dbk, p.uplink_frequency_hz / 1e9, p.uplink_bandwidth_hz / 1e6);
    }
    fmt::print(out, "missions:\n");
    for (const auto& m : catalog.missions) {
        fmt::print(out, "  {:<16} {:g} km  {}\n", m.name, m.altitude_km,
                   m.inclination_deg ? fmt::format("{:g} deg", *m.inclination_deg) : "sso");
    }
}

void print_summary(const ReportBundle& b, std::ostream& err) {
    if (b.coverage) {
        const auto& c = *b.coverage;
        fmt::print(err, "total {:.2f} s ({:.2f}%)\n", c.total_access_s, c.total_pct);
        if (c.min_uninterrupted_s) {
            fmt::print(err, "uninterrupted access min {:.2f} s, max {:.2f} s, {} outages\n", *c.min_uninterrupted_s,
                       *c.max_uninterrupted_s, c.outages.size());
        }
    }
    if (b.ecdf) {
        const auto& e = *b.ecdf;
        fmt::print(err, "max single access < {:g} s: {} of {} satellites ({:.2f}%), {} without access\n",
                   e.threshold_s, e.useless_count, e.counted_satellites, e.useless_fraction * 100.0,
                   e.zero_access_satellites);
    }
    if (b.link && b.link->esn0_dl_db) {
        const auto& l = *b.link;
        fmt::print(err, "DL Es/N0 {:.2f}..{:.2f} dB, peak {:.2f} Mbps\n", l.esn0_dl_db->min, l.esn0_dl_db->max,
                   l.rate_dl_bps->max / 1e6);
        fmt::print(err, "UL Es/N0 {:.2f}..{:.2f} dB, peak {:.2f} Mbps\n", l.esn0_ul_db->min, l.esn0_ul_db->max,
                   l.rate_ul_bps->max / 1e6);
        fmt::print(err, "served {} of {} samples\n", l.served_samples, l.samples);
    }
    if (b.latency) {
        fmt::print(err, "latency {:.2f} ms (baseline {:g} ms, reduction {:.3f} ms)\n", b.latency->latency_ms,
                   b.latency->baseline_ms, b.latency->reduction_ms);
    }
    for (const auto& w : b.warnings) fmt::print(err, "warning: {}\n", w);
}

int execute(const std::string& command, const Options& opt, std::ostream& out, std::ostream& err) {
    const std::filesystem::path data_dir = opt.data_dir.empty() ? default_data_dir() : std::filesystem::path(opt.data_dir);
    const DataCatalog catalog = DataCatalog::load(data_dir);

    if (command == "catalog") {
        if (opt.reference) {
            out << scenario_reference();
        } else {
            print_catalog(catalog, out);
        }
        return 0;
    }

    const ParsedScenario parsed = load_scenario(opt.scenario, catalog, opt.overrides);
    if (command == "validate") {
        // Resolving checks the endpoint parameters and the MODCOD table too.
        const ResolvedScenario r = resolve(parsed.scenario, catalog);
        fmt::print(err, "{}: ok ({} satellites, mission {} at {:g} km, inclination {:.2f} deg)\n", opt.scenario,
                   r.satellites.size(), parsed.scenario.mission.name, r.mission_altitude_km,
                   r.mission_inclination_deg);
        return 0;
    }

    AnalysisSet analyses;
    PipelineOptions popt;
    popt.strict = true;
    if (command == "coverage") {
        analyses.coverage = analyses.plots = true;
    } else if (command == "ecdf") {
        analyses.coverage = analyses.ecdf = analyses.plots = true;
    } else if (command == "linkbudget") {
        analyses.link = analyses.plots = true;
    } else if (command == "latency") {
        analyses.latency = true;
    } else {
        analyses = AnalysisSet::from_outputs(parsed.scenario.outputs);
        popt.strict = false;
    }
    popt.threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (opt.verbosity > 0) {
        popt.progress = [&err](std::string_view msg) { fmt::print(err, "{}\n", msg); };
    }

    ReportBundle bundle = run_pipeline(parsed, catalog, analyses, popt);
    std::vector<std::filesystem::path> files;
    if (analyses.plots) files = emit_plots(bundle, opt.output_dir);
    const auto reports = write_reports(bundle, opt.output_dir);
    files.insert(files.end(), reports.begin(), reports.end());
    print_summary(bundle, err);
    if (opt.verbosity > 0) {
        for (const auto& f : files) fmt::print(err, "wrote {}\n", f.string());
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coverage, link budget and latency analysis of satellite internet providers serving space missions",
                 "sipsim"};
    app.set_version_flag("--version", SIPSIM_VERSION);
    app.require_subcommand(1);

    Options opt;
    struct Command {
        const char* name;
        const char* help;
    };
    const Command commands[] = {
        {"catalog", "List bundled constellations, terminals, link endpoints and missions"},
        {"coverage", "Access intervals, outages and coverage statistics"},
        {"ecdf", "Coverage plus the eCDF of the longest single access per satellite"},
        {"linkbudget", "Serving satellite, Es/N0 and achievable rate time series"},
        {"latency", "Round-trip latency for the mission altitude"},
        {"report", "Run every analysis listed under outputs"},
        {"validate", "Parse and check a scenario without computing anything"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--data-dir", opt.data_dir, "Directory holding the bundled CSV data");
        if (std::string_view(c.name) == "catalog") {
            sub->add_flag("--reference", opt.reference, "Print the scenario file reference instead");
            continue;
        }
        sub->add_option("scenario", opt.scenario, "Scenario YAML file")->required();
        sub->add_option("--set", opt.overrides, "Override a scenario key, e.g. --set link.margin_db=1.0")
            ->allow_extra_args(false);
        sub->add_flag("-v,--verbose", opt.verbosity, "Progress messages on standard error");
        if (std::string_view(c.name) == "validate") continue;
        sub->add_option("-o,--output-dir", opt.output_dir, "Output directory")
            ->envname("SIPSIM_OUTPUT_DIR")
            ->capture_default_str();
        sub->add_option("--threads", opt.threads, "Worker threads for the visibility scan (0: all cores)")
            ->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version are successful exits.
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        return execute(command, opt, out, err);
    } catch (const ConfigError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return 2;
    }
}

}  // namespace sipsim
