#include "sipsim/terminals.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "sipsim/csv.hpp"
#include "sipsim/error.hpp"

namespace sipsim {
namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

Band parse_band(const CsvTable& t, const CsvTable::Row& row) {
    const auto& s = t.text(row, "band");
    if (iequals(s, "ku")) return Band::Ku;
    if (iequals(s, "ka")) return Band::Ka;
    throw ParseError(t.source(), row.line, fmt::format("unknown band '{}'", s));
}

Steering parse_steering(const CsvTable& t, const CsvTable::Row& row) {
    const auto& s = t.text(row, "steering");
    if (iequals(s, "msa")) return Steering::MSA;
    if (iequals(s, "esa")) return Steering::ESA;
    if (iequals(s, "hybrid")) return Steering::Hybrid;
    throw ParseError(t.source(), row.line, fmt::format("unknown steering method '{}'", s));
}

}  // namespace

std::string_view to_string(Band band) { return band == Band::Ku ? "Ku" : "Ka"; }

std::string_view to_string(Steering steering) {
    switch (steering) {
        case Steering::MSA: return "MSA";
        case Steering::ESA: return "ESA";
        case Steering::Hybrid: return "Hybrid";
    }
    return "?";
}

TerminalCatalog TerminalCatalog::parse(std::string_view terminals_csv, std::string_view endpoints_csv) {
    TerminalCatalog catalog;
    const CsvTable terminals = CsvTable::parse(terminals_csv, "terminals.csv");
    for (const auto& row : terminals.rows()) {
        TerminalPreset t;
        t.name = terminals.text(row, "name");
        t.band = parse_band(terminals, row);
        t.eirp_dbw = terminals.number(row, "eirp_dbw");
        t.g_over_t_dbk = terminals.optional_number(row, "g_over_t_dbk");
        t.steering = parse_steering(terminals, row);
        t.mass_kg = terminals.number(row, "mass_kg");
        if (!(t.eirp_dbw > 0.0) || !(t.mass_kg > 0.0)) {
            throw ParseError(terminals.source(), row.line, "EIRP and mass must be positive");
        }
        catalog.terminals_.push_back(std::move(t));
    }

    const CsvTable endpoints = CsvTable::parse(endpoints_csv, "link_endpoints.csv");
    for (const auto& row : endpoints.rows()) {
        const auto& kind = endpoints.text(row, "kind");
        if (kind == "payload") {
            catalog.payloads_.push_back({endpoints.text(row, "name"), endpoints.number(row, "eirp_dbw"),
                                         endpoints.number(row, "g_over_t_dbk")});
        } else if (kind == "provider") {
            ProviderLinkPreset p;
            p.name = endpoints.text(row, "name");
            p.downlink_eirp_dbw = endpoints.number(row, "eirp_dbw");
            p.uplink_g_over_t_dbk = endpoints.number(row, "g_over_t_dbk");
            p.downlink_frequency_hz = endpoints.number(row, "downlink_frequency_hz");
            p.downlink_bandwidth_hz = endpoints.number(row, "downlink_bandwidth_hz");
            p.uplink_frequency_hz = endpoints.number(row, "uplink_frequency_hz");
            p.uplink_bandwidth_hz = endpoints.number(row, "uplink_bandwidth_hz");
            catalog.providers_.push_back(std::move(p));
        } else {
            throw ParseError(endpoints.source(), row.line, fmt::format("unknown endpoint kind '{}'", kind));
        }
    }
    return catalog;
}

TerminalCatalog TerminalCatalog::load(const std::filesystem::path& terminals_csv,
                                      const std::filesystem::path& endpoints_csv) {
    return parse(read_text_file(terminals_csv), read_text_file(endpoints_csv));
}

std::optional<PayloadPreset> TerminalCatalog::find_payload(std::string_view name) const {
    for (const auto& p : payloads_) {
        if (iequals(p.name, name)) return p;
    }
    for (const auto& t : terminals_) {
        if (iequals(t.name, name) && t.g_over_t_dbk) return PayloadPreset{t.name, t.eirp_dbw, *t.g_over_t_dbk};
    }
    return std::nullopt;
}

std::optional<ProviderLinkPreset> TerminalCatalog::find_provider(std::string_view name) const {
    for (const auto& p : providers_) {
        if (iequals(p.name, name)) return p;
    }
    return std::nullopt;
}

std::vector<std::string> TerminalCatalog::payload_names() const {
    std::vector<std::string> out;
    for (const auto& p : payloads_) out.push_back(p.name);
    for (const auto& t : terminals_) {
        if (t.g_over_t_dbk) out.push_back(t.name);
    }
    return out;
}

}  // namespace sipsim
