#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "sipsim/catalog.hpp"
#include "sipsim/report.hpp"
#include "sipsim/scenario.hpp"

namespace sipsim {

struct AnalysisSet {
    bool coverage = false;
    bool ecdf = false;
    bool link = false;
    bool latency = false;
    bool plots = false;

    static AnalysisSet from_outputs(const std::vector<OutputKind>& outputs);
};

struct PipelineOptions {
    int threads = 1;
    // Strict runs raise when an analysis cannot be produced; otherwise it is
    // skipped with a warning in the report.
    bool strict = false;
    std::function<void(std::string_view)> progress;
};

ReportBundle run_pipeline(const ParsedScenario& parsed, const DataCatalog& catalog, const AnalysisSet& analyses,
                          const PipelineOptions& options);

}  // namespace sipsim
