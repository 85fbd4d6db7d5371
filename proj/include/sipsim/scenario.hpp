#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sipsim/catalog.hpp"
#include "sipsim/constellation.hpp"
#include "sipsim/coverage.hpp"
#include "sipsim/link.hpp"
#include "sipsim/terminals.hpp"
#include "sipsim/visibility.hpp"

namespace sipsim {

enum class OutputKind { Coverage, Ecdf, Link, Latency, Plots };

std::string_view to_string(OutputKind kind);
std::vector<OutputKind> all_outputs();

// Presets are expanded while parsing; `preset` is kept so reports can echo it.
struct ConstellationSpec {
    std::string preset;
    Constellation constellation;

    bool operator==(const ConstellationSpec&) const = default;
};

struct MissionSpec {
    std::string preset;
    std::string name = "mission";
    double altitude_km = 0.0;
    std::optional<double> inclination_deg;  // nullopt: sun-synchronous
    double raan_deg = 0.0;
    double mean_anomaly_deg = 0.0;

    bool operator==(const MissionSpec&) const = default;
};

struct CoverageSpec {
    double coarse_step_s = 10.0;
    double refine_tolerance_s = 0.01;
    VisibilityMode visibility_mode = VisibilityMode::Cone;
    double ecdf_threshold_s = 20.0;
    bool j2 = true;

    bool operator==(const CoverageSpec&) const = default;
};

struct TerminalSpec {
    std::string preset = "ThinPack Ka100";
    PayloadPreset payload{"ThinPack Ka100", 46.0, 13.0};

    bool operator==(const TerminalSpec&) const = default;
};

struct ProviderSpec {
    std::string preset = "o3b-mpower";
    ProviderLinkPreset link{"o3b-mpower", 49.7, 20e9, 100e6, 7.0, 30e9, 4e6};

    bool operator==(const ProviderSpec&) const = default;
};

struct LinkSpec {
    TerminalSpec terminal;
    ProviderSpec provider;
    std::string modcod_table;  // empty: bundled DVB-S2X table
    double margin_db = 0.0;
    double rolloff = 0.0;
    double implementation_loss_db = 0.0;
    double step_s = 10.0;
    VisibilityMode visibility_mode = VisibilityMode::LosOnly;

    bool operator==(const LinkSpec&) const = default;
};

struct Scenario {
    ConstellationSpec constellation;
    MissionSpec mission;
    double horizon_s = 86400.0;
    CoverageSpec coverage;
    LinkSpec link;
    std::vector<OutputKind> outputs = all_outputs();

    bool operator==(const Scenario&) const = default;
};

struct ParsedScenario {
    Scenario scenario;
    std::vector<std::string> defaults_used;  // dotted keys that took their default
    std::vector<std::string> overrides;      // key=value, in application order
};

// Parses YAML scenario text. Overrides (dotted.key=value) are applied to the
// document before validation. Throws ParseError on syntax errors,
// ValidationError naming the field (and line) otherwise, CatalogError for
// unknown presets.
ParsedScenario parse_scenario(std::string_view text, const DataCatalog& catalog,
                              std::span<const std::string> overrides = {}, std::string source = "<scenario>");

ParsedScenario load_scenario(const std::filesystem::path& path, const DataCatalog& catalog,
                             std::span<const std::string> overrides = {});

// Fully explicit YAML; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// Everything the compute modules need, derived from a scenario.
struct ResolvedScenario {
    Constellation constellation;
    std::vector<Satellite> satellites;
    OrbitElements mission;
    double mission_altitude_km = 0.0;
    double mission_inclination_deg = 0.0;
    Horizon horizon;
    VisibilityConfig coverage_config;
    LinkEndpointParams downlink;
    LinkEndpointParams uplink;
    ModCodTable modcods{{}};
};

ResolvedScenario resolve(const Scenario& scenario, const DataCatalog& catalog);

// Markdown reference of every scenario key with its default.
std::string scenario_reference();

// Closest allowed key for a misspelt one, empty when nothing is close.
std::string suggest_key(std::string_view key, std::span<const std::string_view> allowed);

}  // namespace sipsim
