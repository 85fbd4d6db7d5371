#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sipsim/coverage.hpp"
#include "sipsim/latency.hpp"
#include "sipsim/link.hpp"
#include "sipsim/scenario.hpp"

namespace sipsim {

struct SeriesSummary {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

// Statistics over the served samples of a link time series.
struct LinkSummary {
    int samples = 0;
    int served_samples = 0;
    std::optional<SeriesSummary> range_km;
    std::optional<SeriesSummary> esn0_dl_db;
    std::optional<SeriesSummary> esn0_ul_db;
    std::optional<SeriesSummary> rate_dl_bps;
    std::optional<SeriesSummary> rate_ul_bps;
};

LinkSummary summarize_link(std::span<const LinkSample> series);

struct ReportBundle {
    ParsedScenario scenario;
    std::string tool_version;
    int satellite_count = 0;
    double mission_inclination_deg = 0.0;

    std::optional<CoverageReport> coverage;
    PerSatelliteIntervals access;  // filled together with coverage
    std::optional<EcdfResult> ecdf;
    std::optional<std::vector<LinkSample>> link_series;
    std::optional<LinkSummary> link;
    std::optional<LatencyResult> latency;
    std::vector<std::string> warnings;
};

std::string report_json(const ReportBundle& bundle);
std::string coverage_intervals_csv(const PerSatelliteIntervals& access);
std::string ecdf_csv(const EcdfResult& ecdf);
std::string link_series_csv(std::span<const LinkSample> series);

// Writes the text atomically enough for our purposes; IoError names the path.
void write_text_file(const std::filesystem::path& path, std::string_view text);

// report.json plus one CSV per computed analysis. Returns the files written.
std::vector<std::filesystem::path> write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace sipsim
