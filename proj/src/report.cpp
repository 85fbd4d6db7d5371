#include "sipsim/report.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "sipsim/error.hpp"
#include "sipsim/json_writer.hpp"

namespace sipsim {

namespace {

template <typename Get>
std::optional<SeriesSummary> summarize(std::span<const LinkSample> series, Get get) {
    SeriesSummary s;
    double sum = 0.0;
    int n = 0;
    for (const auto& sample : series) {
        if (!sample.serving_sat) continue;
        const double v = get(sample);
        if (n == 0) {
            s.min = s.max = v;
        } else {
            s.min = std::min(s.min, v);
            s.max = std::max(s.max, v);
        }
        sum += v;
        ++n;
    }
    if (n == 0) return std::nullopt;
    // Clamp guards the min <= mean <= max contract against rounding.
    s.mean = std::clamp(sum / n, s.min, s.max);
    return s;
}

json::Value summary_json(const std::optional<SeriesSummary>& s, json::Value (*fmt_value)(double)) {
    if (!s) return json::Value::null();
    json::Value o = json::Value::object();
    o.set("min", fmt_value(s->min));
    o.set("mean", fmt_value(s->mean));
    o.set("max", fmt_value(s->max));
    return o;
}

json::Value spread_json(const std::optional<SeriesSummary>& s) {
    return s ? json::db(s->max - s->min) : json::Value::null();
}

json::Value scenario_json(const Scenario& s) {
    using json::Value;
    Value root = Value::object();

    const Constellation& c = s.constellation.constellation;
    Value& con = root.set("constellation", Value::object());
    con.set("preset", s.constellation.preset.empty() ? Value::null() : Value::string(s.constellation.preset));
    con.set("name", Value::string(c.name));
    con.set("min_elevation", Value::exact(c.min_elevation_deg));
    con.set("baseline_latency_ms", c.baseline_latency_ms ? Value::exact(*c.baseline_latency_ms) : Value::null());
    con.set("max_satellites", c.max_satellites ? Value::integer(*c.max_satellites) : Value::null());
    Value& shells = con.set("shells", Value::array());
    for (const auto& sh : c.shells) {
        Value& o = shells.push(Value::object());
        o.set("altitude_km", Value::exact(sh.altitude_km));
        o.set("inclination_deg", Value::exact(sh.inclination_deg));
        o.set("planes", Value::integer(sh.planes));
        o.set("sats_per_plane", Value::integer(sh.sats_per_plane));
        o.set("phasing_factor", Value::integer(sh.phasing_factor));
        o.set("raan_span_deg", Value::exact(sh.raan_span_deg));
    }

    const MissionSpec& m = s.mission;
    Value& mis = root.set("mission", Value::object());
    mis.set("preset", m.preset.empty() ? Value::null() : Value::string(m.preset));
    mis.set("name", Value::string(m.name));
    mis.set("altitude_km", Value::exact(m.altitude_km));
    mis.set("inclination", m.inclination_deg ? Value::exact(*m.inclination_deg) : Value::string("sso"));
    mis.set("raan_deg", Value::exact(m.raan_deg));
    mis.set("mean_anomaly_deg", Value::exact(m.mean_anomaly_deg));

    root.set("horizon_s", Value::exact(s.horizon_s));

    Value& cov = root.set("coverage", Value::object());
    cov.set("coarse_step_s", Value::exact(s.coverage.coarse_step_s));
    cov.set("refine_tolerance_s", Value::exact(s.coverage.refine_tolerance_s));
    cov.set("visibility_mode", Value::string(to_string(s.coverage.visibility_mode)));
    cov.set("ecdf_threshold_s", Value::exact(s.coverage.ecdf_threshold_s));
    cov.set("j2", Value::boolean(s.coverage.j2));

    const LinkSpec& l = s.link;
    Value& link = root.set("link", Value::object());
    Value& term = link.set("terminal", Value::object());
    term.set("preset", l.terminal.preset.empty() ? Value::null() : Value::string(l.terminal.preset));
    term.set("eirp_dbw", Value::exact(l.terminal.payload.eirp_dbw));
    term.set("g_over_t_dbk", Value::exact(l.terminal.payload.g_over_t_dbk));
    Value& prov = link.set("provider", Value::object());
    prov.set("preset", l.provider.preset.empty() ? Value::null() : Value::string(l.provider.preset));
    Value& dl = prov.set("downlink", Value::object());
    dl.set("eirp_dbw", Value::exact(l.provider.link.downlink_eirp_dbw));
    dl.set("frequency_hz", Value::exact(l.provider.link.downlink_frequency_hz));
    dl.set("bandwidth_hz", Value::exact(l.provider.link.downlink_bandwidth_hz));
    Value& ul = prov.set("uplink", Value::object());
    ul.set("g_over_t_dbk", Value::exact(l.provider.link.uplink_g_over_t_dbk));
    ul.set("frequency_hz", Value::exact(l.provider.link.uplink_frequency_hz));
    ul.set("bandwidth_hz", Value::exact(l.provider.link.uplink_bandwidth_hz));
    link.set("modcod_table", l.modcod_table.empty() ? Value::null() : Value::string(l.modcod_table));
    link.set("margin_db", Value::exact(l.margin_db));
    link.set("rolloff", Value::exact(l.rolloff));
    link.set("implementation_loss_db", Value::exact(l.implementation_loss_db));
    link.set("step_s", Value::exact(l.step_s));
    link.set("visibility_mode", Value::string(to_string(l.visibility_mode)));

    Value& outputs = root.set("outputs", Value::array());
    for (auto kind : s.outputs) outputs.push(Value::string(to_string(kind)));
    return root;
}

json::Value intervals_json(const std::vector<TimeInterval>& intervals) {
    json::Value a = json::Value::array();
    for (const auto& iv : intervals) {
        json::Value pair = json::Value::array();
        pair.push(json::seconds(iv.start.t_s));
        pair.push(json::seconds(iv.end.t_s));
        a.push(std::move(pair));
    }
    return a;
}

}  // namespace

LinkSummary summarize_link(std::span<const LinkSample> series) {
    LinkSummary s;
    s.samples = static_cast<int>(series.size());
    s.served_samples = static_cast<int>(
        std::count_if(series.begin(), series.end(), [](const LinkSample& x) { return x.serving_sat.has_value(); }));
    s.range_km = summarize(series, [](const LinkSample& x) { return x.slant_range_km; });
    s.esn0_dl_db = summarize(series, [](const LinkSample& x) { return x.esn0_dl_db; });
    s.esn0_ul_db = summarize(series, [](const LinkSample& x) { return x.esn0_ul_db; });
    s.rate_dl_bps = summarize(series, [](const LinkSample& x) { return x.rate_dl_bps; });
    s.rate_ul_bps = summarize(series, [](const LinkSample& x) { return x.rate_ul_bps; });
    return s;
}

std::string report_json(const ReportBundle& b) {
    using json::Value;
    Value root = Value::object();

    Value& prov = root.set("provenance", Value::object());
    prov.set("tool", Value::string("sipsim"));
    prov.set("version", Value::string(b.tool_version));
    prov.set("defaults_used", json::string_array(b.scenario.defaults_used));
    prov.set("overrides", json::string_array(b.scenario.overrides));

    root.set("scenario", scenario_json(b.scenario.scenario));

    Value& derived = root.set("derived", Value::object());
    derived.set("satellites", Value::integer(b.satellite_count));
    derived.set("mission_inclination_deg", Value::fixed(b.mission_inclination_deg, 4));

    if (b.coverage) {
        const CoverageReport& c = *b.coverage;
        std::size_t accesses = 0;
        for (const auto& [id, list] : b.access) accesses += list.size();
        Value& cov = root.set("coverage", Value::object());
        cov.set("horizon_s", json::seconds(c.horizon.length()));
        cov.set("access_intervals", Value::integer(static_cast<std::int64_t>(accesses)));
        cov.set("satellites_with_access", Value::integer(static_cast<std::int64_t>(std::count_if(
                                              b.access.begin(), b.access.end(),
                                              [](const auto& kv) { return !kv.second.empty(); }))));
        cov.set("total_access_s", json::seconds(c.total_access_s));
        cov.set("total_pct", json::percent(c.total_pct));
        cov.set("min_uninterrupted_s", json::seconds(c.min_uninterrupted_s));
        cov.set("max_uninterrupted_s", json::seconds(c.max_uninterrupted_s));
        cov.set("coverage_intervals", intervals_json(c.coverage));
        cov.set("outages", intervals_json(c.outages));
    }

    if (b.ecdf) {
        const EcdfResult& e = *b.ecdf;
        Value& ecdf = root.set("ecdf", Value::object());
        ecdf.set("statistic", Value::string("max_single_access_s"));
        ecdf.set("threshold_s", json::seconds(e.threshold_s));
        ecdf.set("counted_satellites", Value::integer(e.counted_satellites));
        ecdf.set("zero_access_satellites", Value::integer(e.zero_access_satellites));
        ecdf.set("useless_count", Value::integer(e.useless_count));
        ecdf.set("useless_fraction", json::fraction(e.useless_fraction));
        Value& points = ecdf.set("points", Value::array());
        for (const auto& p : e.points) {
            Value& o = points.push(Value::object());
            o.set("duration_s", json::seconds(p.duration_s));
            o.set("probability", json::fraction(p.probability));
        }
    }

    if (b.link) {
        const LinkSummary& l = *b.link;
        Value& link = root.set("link", Value::object());
        link.set("samples", Value::integer(l.samples));
        link.set("served_samples", Value::integer(l.served_samples));
        link.set("range_km", summary_json(l.range_km, &json::km));
        link.set("esn0_dl_db", summary_json(l.esn0_dl_db, &json::db));
        link.set("esn0_ul_db", summary_json(l.esn0_ul_db, &json::db));
        link.set("esn0_dl_spread_db", spread_json(l.esn0_dl_db));
        link.set("esn0_ul_spread_db", spread_json(l.esn0_ul_db));
        link.set("rate_dl_bps", summary_json(l.rate_dl_bps, &json::bps));
        link.set("rate_ul_bps", summary_json(l.rate_ul_bps, &json::bps));
    }

    if (b.latency) {
        const LatencyResult& l = *b.latency;
        Value& lat = root.set("latency", Value::object());
        lat.set("baseline_ms", Value::fixed(l.baseline_ms, 3));
        lat.set("mission_altitude_km", json::km(l.mission_altitude_km));
        lat.set("reduction_ms", Value::fixed(l.reduction_ms, 3));
        lat.set("latency_ms", Value::fixed(l.latency_ms, 3));
    }

    root.set("warnings", json::string_array(b.warnings));
    return root.dump();
}

std::string coverage_intervals_csv(const PerSatelliteIntervals& access) {
    std::string out = "sat_id,start_s,end_s,duration_s\n";
    for (const auto& [id, list] : access) {
        for (const auto& iv : list) {
            out += fmt::format("{},{:.2f},{:.2f},{:.2f}\n", id, iv.start.t_s, iv.end.t_s, iv.duration());
        }
    }
    return out;
}

std::string ecdf_csv(const EcdfResult& ecdf) {
    std::string out = "duration_s,probability\n";
    for (const auto& p : ecdf.points) out += fmt::format("{:.2f},{:.6f}\n", p.duration_s, p.probability);
    return out;
}

std::string link_series_csv(std::span<const LinkSample> series) {
    std::string out = "t_s,serving_sat,range_km,esn0_dl_db,esn0_ul_db,rate_dl_bps,rate_ul_bps\n";
    for (const auto& s : series) {
        if (!s.serving_sat) {
            out += fmt::format("{:.2f},,,,,0,0\n", s.t.t_s);
            continue;
        }
        out += fmt::format("{:.2f},{},{:.2f},{:.2f},{:.2f},{},{}\n", s.t.t_s, *s.serving_sat, s.slant_range_km,
                           s.esn0_dl_db, s.esn0_ul_db, std::llround(s.rate_dl_bps), std::llround(s.rate_ul_bps));
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("{}: cannot open for writing", path.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IoError(fmt::format("{}: write failed", path.string()));
}

std::vector<std::filesystem::path> write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError(fmt::format("{}: cannot create directory ({})", out_dir.string(), ec.message()));

    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* name, const std::string& text) {
        const auto path = out_dir / name;
        write_text_file(path, text);
        written.push_back(path);
    };
    emit("report.json", report_json(bundle));
    if (bundle.coverage) emit("coverage_intervals.csv", coverage_intervals_csv(bundle.access));
    if (bundle.ecdf) emit("ecdf.csv", ecdf_csv(*bundle.ecdf));
    if (bundle.link_series) emit("link_series.csv", link_series_csv(*bundle.link_series));
    return written;
}

}  // namespace sipsim
