#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sipsim/constellation.hpp"
#include "sipsim/coverage.hpp"
#include "sipsim/orbit.hpp"
#include "sipsim/visibility.hpp"

namespace sipsim {

// One transmit -> receive direction.
struct LinkEndpointParams {
    double eirp_dbw = 0.0;      // transmit side
    double g_over_t_dbk = 0.0;  // receive side
    double frequency_hz = 0.0;
    double bandwidth_hz = 0.0;
    double rolloff = 0.0;

    bool operator==(const LinkEndpointParams&) const = default;
};

void validate(const LinkEndpointParams& p);

struct ModCodEntry {
    std::string name;
    double spectral_efficiency = 0.0;  // bits/symbol
    double esn0_threshold_db = 0.0;    // ideal, quasi-error-free

    bool operator==(const ModCodEntry&) const = default;
};

// MODCOD points sorted by ascending threshold with strictly increasing
// efficiency. The loader rejects files that break either rule.
class ModCodTable {
public:
    explicit ModCodTable(std::vector<ModCodEntry> entries);

    static ModCodTable load(const std::filesystem::path& csv_path);
    static ModCodTable parse(std::string_view csv_text, std::string source);

    std::span<const ModCodEntry> entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::vector<ModCodEntry> entries_;
};

// Free-space path loss in dB, distance in km.
double fspl(double d_km, double f_hz);

double symbol_rate(double bandwidth_hz, double rolloff);

double es_n0(const LinkEndpointParams& link, double d_km);

// Both satellites at the Earth-grazing limb.
double max_los_range(double h_sip_km, double h_mission_km);

// Highest-efficiency entry whose threshold <= esn0 - margin. Entries exactly
// at the threshold qualify.
std::optional<ModCodEntry> select_modcod(double esn0_db, std::span<const ModCodEntry> table, double margin_db);

double data_rate(const ModCodEntry& mc, double bandwidth_hz, double rolloff);

// Rate for a given Es/N0, 0 when no entry qualifies.
double achievable_rate(double esn0_db, const ModCodTable& table, double margin_db, const LinkEndpointParams& link);

struct ProviderSample {
    SatId id = 0;
    EciState state;
    double alpha = 0.0;  // cone half-angle, used in cone mode
};

// Visible provider with the smallest slant range, lowest id on ties.
std::optional<SatId> serving_satellite(std::span<const ProviderSample> providers, const EciState& mission,
                                       VisibilityMode mode);

struct LinkSample {
    Epoch t;
    std::optional<SatId> serving_sat;
    double slant_range_km = 0.0;
    double esn0_dl_db = 0.0;
    double esn0_ul_db = 0.0;
    double rate_dl_bps = 0.0;
    double rate_ul_bps = 0.0;
};

struct LinkScenario {
    std::vector<Satellite> satellites;
    double min_elevation_deg = 0.0;
    OrbitElements mission;
    Horizon horizon;
    double step_s = 10.0;
    VisibilityMode mode = VisibilityMode::LosOnly;
    bool j2 = true;
    LinkEndpointParams downlink;  // provider -> mission
    LinkEndpointParams uplink;    // mission -> provider
    ModCodTable modcods{{}};
    double margin_db = 0.0;
    double implementation_loss_db = 0.0;
};

std::vector<LinkSample> link_time_series(const LinkScenario& scenario);

}  // namespace sipsim
