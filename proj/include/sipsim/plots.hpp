#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sipsim/coverage.hpp"
#include "sipsim/link.hpp"

namespace sipsim {

struct ReportBundle;

// Standalone SVG 1.1 documents.
std::string access_timeline_svg(const CoverageReport& coverage, const std::string& title);
std::string ecdf_svg(const EcdfResult& ecdf, const std::string& title);
std::string link_panels_svg(std::span<const LinkSample> series, const std::string& title);

// Writes one plot per computed analysis of `bundle`. A requested plot whose
// series is missing is skipped and a warning is appended to the bundle.
std::vector<std::filesystem::path> emit_plots(ReportBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace sipsim
