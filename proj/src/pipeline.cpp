#include "sipsim/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "sipsim/error.hpp"

#ifndef SIPSIM_VERSION
#define SIPSIM_VERSION "0.0.0"
#endif

namespace sipsim {

AnalysisSet AnalysisSet::from_outputs(const std::vector<OutputKind>& outputs) {
    auto has = [&](OutputKind k) { return std::find(outputs.begin(), outputs.end(), k) != outputs.end(); };
    AnalysisSet a;
    a.coverage = has(OutputKind::Coverage);
    a.ecdf = has(OutputKind::Ecdf);
    a.link = has(OutputKind::Link);
    a.latency = has(OutputKind::Latency);
    a.plots = has(OutputKind::Plots);
    return a;
}

ReportBundle run_pipeline(const ParsedScenario& parsed, const DataCatalog& catalog, const AnalysisSet& analyses,
                          const PipelineOptions& options) {
    auto progress = [&](std::string_view msg) {
        if (options.progress) options.progress(msg);
    };
    const Scenario& s = parsed.scenario;
    const ResolvedScenario r = resolve(s, catalog);

    ReportBundle b;
    b.scenario = parsed;
    b.tool_version = SIPSIM_VERSION;
    b.satellite_count = static_cast<int>(r.satellites.size());
    b.mission_inclination_deg = r.mission_inclination_deg;

    if (analyses.coverage || analyses.ecdf) {
        progress(fmt::format("scanning {} satellites over {:.0f} s", r.satellites.size(), r.horizon.length()));
        b.access = scan_constellation(r.satellites, r.mission, r.horizon, r.coverage_config, options.threads);
        b.coverage = coverage_stats(union_and_outages(b.access, r.horizon), b.access, r.horizon);
    }

    if (analyses.ecdf) {
        try {
            b.ecdf = per_satellite_ecdf(b.coverage->per_sat_durations, s.coverage.ecdf_threshold_s);
        } catch (const ComputeError& e) {
            if (options.strict) throw;
            b.warnings.push_back(fmt::format("ecdf skipped: {}", e.what()));
        }
    }

    if (analyses.link) {
        progress(fmt::format("link time series every {:g} s", s.link.step_s));
        LinkScenario ls;
        ls.satellites = r.satellites;
        ls.min_elevation_deg = r.constellation.min_elevation_deg;
        ls.mission = r.mission;
        ls.horizon = r.horizon;
        ls.step_s = s.link.step_s;
        ls.mode = s.link.visibility_mode;
        ls.j2 = s.coverage.j2;
        ls.downlink = r.downlink;
        ls.uplink = r.uplink;
        ls.modcods = r.modcods;
        ls.margin_db = s.link.margin_db;
        ls.implementation_loss_db = s.link.implementation_loss_db;
        b.link_series = link_time_series(ls);
        b.link = summarize_link(*b.link_series);
        if (b.link->served_samples == 0) b.warnings.push_back("link: no provider satellite visible at any sample");
    }

    if (analyses.latency) {
        if (const auto& baseline = r.constellation.baseline_latency_ms) {
            try {
                b.latency = latency_result(*baseline, r.mission_altitude_km);
            } catch (const ComputeError& e) {
                if (options.strict) throw;
                b.warnings.push_back(fmt::format("latency skipped: {}", e.what()));
            }
        } else if (options.strict) {
            throw ValidationError("constellation.baseline_latency_ms", "required by the latency analysis");
        } else {
            b.warnings.push_back("latency skipped: constellation has no baseline_latency_ms");
        }
    }
    return b;
}

}  // namespace sipsim
