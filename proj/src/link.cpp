#include "sipsim/link.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/csv.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

void validate(const LinkEndpointParams& p) {
    if (!std::isfinite(p.eirp_dbw)) throw ValidationError("eirp_dbw", "must be finite");
    if (!std::isfinite(p.g_over_t_dbk)) throw ValidationError("g_over_t_dbk", "must be finite");
    if (!(p.frequency_hz > 0.0) || !std::isfinite(p.frequency_hz)) {
        throw ValidationError("frequency_hz", "must be positive");
    }
    if (!(p.bandwidth_hz > 0.0) || !std::isfinite(p.bandwidth_hz)) {
        throw ValidationError("bandwidth_hz", "must be positive");
    }
    if (!(p.rolloff >= 0.0) || !std::isfinite(p.rolloff)) throw ValidationError("rolloff", "must be >= 0");
}

ModCodTable::ModCodTable(std::vector<ModCodEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (!(e.spectral_efficiency > 0.0) || !std::isfinite(e.esn0_threshold_db)) {
            throw ValidationError("modcod_table", fmt::format("entry '{}' has invalid values", e.name));
        }
        if (i == 0) continue;
        const auto& prev = entries_[i - 1];
        if (!(e.esn0_threshold_db > prev.esn0_threshold_db)) {
            throw ValidationError("modcod_table",
                                  fmt::format("entry '{}' is not sorted by ascending threshold", e.name));
        }
        if (!(e.spectral_efficiency > prev.spectral_efficiency)) {
            throw ValidationError("modcod_table",
                                  fmt::format("entry '{}' does not raise spectral efficiency over '{}'", e.name,
                                              prev.name));
        }
    }
}

ModCodTable ModCodTable::parse(std::string_view csv_text, std::string source) {
    const CsvTable table = CsvTable::parse(csv_text, std::move(source));
    std::vector<ModCodEntry> entries;
    for (const auto& row : table.rows()) {
        entries.push_back({table.text(row, "name"), table.number(row, "spectral_efficiency"),
                           table.number(row, "esn0_threshold_db")});
    }
    return ModCodTable(std::move(entries));
}

ModCodTable ModCodTable::load(const std::filesystem::path& csv_path) {
    return parse(read_text_file(csv_path), csv_path.string());
}

double fspl(double d_km, double f_hz) {
    if (!(d_km > 0.0) || !(f_hz > 0.0)) throw DomainError("path loss needs positive distance and frequency");
    return 20.0 * std::log10(4.0 * kPi * d_km * 1000.0 * f_hz / kSpeedOfLightMS);
}

double symbol_rate(double bandwidth_hz, double rolloff) { return bandwidth_hz / (1.0 + rolloff); }

double es_n0(const LinkEndpointParams& link, double d_km) {
    return link.eirp_dbw + link.g_over_t_dbk - fspl(d_km, link.frequency_hz) + kBoltzmannDb -
           10.0 * std::log10(symbol_rate(link.bandwidth_hz, link.rolloff));
}

double max_los_range(double h_sip_km, double h_mission_km) {
    if (!(h_sip_km > h_mission_km) || !(h_mission_km >= 0.0)) {
        throw DomainError("maximum LOS range needs the provider above the mission");
    }
    const double re2 = kEarthRadiusKm * kEarthRadiusKm;
    const double rs = kEarthRadiusKm + h_sip_km;
    const double rm = kEarthRadiusKm + h_mission_km;
    return std::sqrt(rs * rs - re2) + std::sqrt(rm * rm - re2);
}

std::optional<ModCodEntry> select_modcod(double esn0_db, std::span<const ModCodEntry> table, double margin_db) {
    if (table.empty()) throw ConfigError("MODCOD table is empty");
    const ModCodEntry* best = nullptr;
    const double available = esn0_db - margin_db;
    for (const auto& entry : table) {
        if (entry.esn0_threshold_db > available) break;
        if (!best || entry.spectral_efficiency > best->spectral_efficiency) best = &entry;
    }
    if (!best) return std::nullopt;
    return *best;
}

double data_rate(const ModCodEntry& mc, double bandwidth_hz, double rolloff) {
    return mc.spectral_efficiency * symbol_rate(bandwidth_hz, rolloff);
}

double achievable_rate(double esn0_db, const ModCodTable& table, double margin_db, const LinkEndpointParams& link) {
    const auto mc = select_modcod(esn0_db, table.entries(), margin_db);
    return mc ? data_rate(*mc, link.bandwidth_hz, link.rolloff) : 0.0;
}

std::optional<SatId> serving_satellite(std::span<const ProviderSample> providers, const EciState& mission,
                                       VisibilityMode mode) {
    std::optional<SatId> best;
    double best_range = 0.0;
    for (const auto& p : providers) {
        if (p.state.t != mission.t) throw DomainError("serving satellite: provider and mission epochs differ");
        if (!is_visible(p.state.position_km, mission.position_km, mode, std::cos(p.alpha))) continue;
        const double range = distance(p.state.position_km, mission.position_km);
        if (!best || range < best_range || (range == best_range && p.id < *best)) {
            best = p.id;
            best_range = range;
        }
    }
    return best;
}

std::vector<LinkSample> link_time_series(const LinkScenario& sc) {
    validate(sc.downlink);
    validate(sc.uplink);
    if (sc.modcods.empty()) throw ConfigError("MODCOD table is empty");
    if (!(sc.step_s > 0.0)) throw ValidationError("link.step_s", "must be positive");
    if (!(sc.horizon.end > sc.horizon.start)) throw ValidationError("horizon_s", "must be positive");

    std::vector<Propagator> providers;
    std::vector<double> alphas;
    providers.reserve(sc.satellites.size());
    for (const auto& sat : sc.satellites) {
        providers.emplace_back(sat.elements, sc.j2);
        alphas.push_back(cone_half_angle(sat.elements.a_km - kEarthRadiusKm, sc.min_elevation_deg));
    }
    const Propagator mission(sc.mission, sc.j2);

    const long last = static_cast<long>(std::floor(sc.horizon.length() / sc.step_s + 1e-9));
    std::vector<LinkSample> out;
    out.reserve(static_cast<std::size_t>(last + 1));
    std::vector<ProviderSample> states(providers.size());
    for (long k = 0; k <= last; ++k) {
        const Epoch t{sc.horizon.start.t_s + static_cast<double>(k) * sc.step_s};
        const EciState own = mission.state(t);
        for (std::size_t i = 0; i < providers.size(); ++i) {
            states[i] = {sc.satellites[i].id, providers[i].state(t), alphas[i]};
        }
        LinkSample sample;
        sample.t = t;
        sample.serving_sat = serving_satellite(states, own, sc.mode);
        if (sample.serving_sat) {
            std::size_t index = 0;
            while (sc.satellites[index].id != *sample.serving_sat) ++index;
            sample.slant_range_km = distance(states[index].state.position_km, own.position_km);
            sample.esn0_dl_db = es_n0(sc.downlink, sample.slant_range_km) - sc.implementation_loss_db;
            sample.esn0_ul_db = es_n0(sc.uplink, sample.slant_range_km) - sc.implementation_loss_db;
            sample.rate_dl_bps = achievable_rate(sample.esn0_dl_db, sc.modcods, sc.margin_db, sc.downlink);
            sample.rate_ul_bps = achievable_rate(sample.esn0_ul_db, sc.modcods, sc.margin_db, sc.uplink);
        }
        out.push_back(sample);
    }
    return out;
}

}  // namespace sipsim
