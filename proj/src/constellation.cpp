#include "sipsim/constellation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/csv.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

int default_phasing_factor(int planes) { return planes > 1 ? 1 : 0; }

void validate(const Shell& shell) {
    if (!std::isfinite(shell.altitude_km) || shell.altitude_km <= 0.0) {
        throw ValidationError("altitude_km", fmt::format("{} must be positive", shell.altitude_km));
    }
    if (!std::isfinite(shell.inclination_deg) || shell.inclination_deg < 0.0 || shell.inclination_deg > 180.0) {
        throw ValidationError("inclination_deg", fmt::format("{} outside [0, 180]", shell.inclination_deg));
    }
    if (shell.planes < 1) throw ValidationError("planes", "must be at least 1");
    if (shell.sats_per_plane < 1) throw ValidationError("sats_per_plane", "must be at least 1");
    if (shell.phasing_factor < 0 || shell.phasing_factor >= shell.planes) {
        throw ValidationError("phasing_factor",
                              fmt::format("{} outside [0, planes = {})", shell.phasing_factor, shell.planes));
    }
    if (!std::isfinite(shell.raan_span_deg) || shell.raan_span_deg < 0.0 || shell.raan_span_deg > 360.0) {
        throw ValidationError("raan_span_deg", fmt::format("{} outside [0, 360]", shell.raan_span_deg));
    }
}

int Constellation::satellite_count() const {
    int total = 0;
    for (const auto& s : shells) total += s.satellite_count();
    return max_satellites ? std::min(total, *max_satellites) : total;
}

void validate(const Constellation& c) {
    if (c.shells.empty()) throw ValidationError("shells", fmt::format("constellation '{}' has no shells", c.name));
    for (const auto& s : c.shells) validate(s);
    if (!std::isfinite(c.min_elevation_deg) || c.min_elevation_deg < 0.0 || c.min_elevation_deg >= 90.0) {
        throw ValidationError("min_elevation", fmt::format("{} outside [0, 90)", c.min_elevation_deg));
    }
    if (c.baseline_latency_ms && !(*c.baseline_latency_ms > 0.0)) {
        throw ValidationError("baseline_latency_ms", "must be positive");
    }
    if (c.max_satellites && *c.max_satellites < 1) throw ValidationError("max_satellites", "must be at least 1");
}

std::vector<OrbitElements> build_shell(const Shell& shell, Epoch epoch) {
    validate(shell);
    const int planes = shell.planes;
    const int per_plane = shell.sats_per_plane;
    const double total = static_cast<double>(planes) * per_plane;
    std::vector<OrbitElements> out;
    out.reserve(static_cast<std::size_t>(shell.satellite_count()));
    for (int p = 0; p < planes; ++p) {
        const double raan = wrap_two_pi(p * shell.raan_span_deg / planes * kDegToRad);
        for (int s = 0; s < per_plane; ++s) {
            OrbitElements el;
            el.a_km = kEarthRadiusKm + shell.altitude_km;
            el.e = 0.0;
            el.inclination = shell.inclination_deg * kDegToRad;
            el.raan = raan;
            el.argp = 0.0;
            el.mean_anomaly =
                wrap_two_pi(kTwoPi * s / per_plane + kTwoPi * shell.phasing_factor * p / total);
            el.epoch = epoch;
            out.push_back(el);
        }
    }
    return out;
}

std::vector<Satellite> build_satellites(const Constellation& c, Epoch epoch) {
    validate(c);
    const int limit = c.satellite_count();
    std::vector<Satellite> out;
    out.reserve(static_cast<std::size_t>(limit));
    for (std::size_t shell_index = 0; shell_index < c.shells.size(); ++shell_index) {
        const Shell& shell = c.shells[shell_index];
        const auto elements = build_shell(shell, epoch);
        for (std::size_t k = 0; k < elements.size(); ++k) {
            if (static_cast<int>(out.size()) == limit) return out;
            Satellite sat;
            sat.id = static_cast<SatId>(out.size());
            sat.shell = static_cast<int>(shell_index);
            sat.plane = static_cast<int>(k) / shell.sats_per_plane;
            sat.slot = static_cast<int>(k) % shell.sats_per_plane;
            sat.elements = elements[k];
            out.push_back(sat);
        }
    }
    return out;
}

ConstellationCatalog ConstellationCatalog::parse(std::string_view csv_text, std::string source) {
    const CsvTable table = CsvTable::parse(csv_text, std::move(source));
    ConstellationCatalog catalog;
    for (const auto& row : table.rows()) {
        const std::string& preset = table.text(row, "preset");
        auto it = std::find_if(catalog.entries_.begin(), catalog.entries_.end(),
                               [&](const Constellation& c) { return c.name == preset; });
        if (it == catalog.entries_.end()) {
            Constellation c;
            c.name = preset;
            c.min_elevation_deg = table.number(row, "min_elevation_deg");
            c.baseline_latency_ms = table.optional_number(row, "baseline_latency_ms");
            if (const auto cap = table.optional_number(row, "max_satellites")) {
                c.max_satellites = static_cast<int>(*cap);
            }
            catalog.entries_.push_back(std::move(c));
            it = std::prev(catalog.entries_.end());
        }
        Shell shell;
        shell.altitude_km = table.number(row, "altitude_km");
        shell.inclination_deg = table.number(row, "inclination_deg");
        shell.planes = static_cast<int>(table.integer(row, "planes"));
        shell.sats_per_plane = static_cast<int>(table.integer(row, "sats_per_plane"));
        const auto phasing = table.optional_number(row, "phasing_factor");
        shell.phasing_factor = phasing ? static_cast<int>(*phasing) : default_phasing_factor(shell.planes);
        const auto span = table.optional_number(row, "raan_span_deg");
        shell.raan_span_deg = span ? *span : (shell.planes > 1 ? 360.0 : 0.0);
        try {
            validate(shell);
        } catch (const ValidationError& e) {
            throw ParseError(table.source(), row.line, e.what());
        }
        it->shells.push_back(shell);
    }
    for (const auto& c : catalog.entries_) validate(c);
    return catalog;
}

ConstellationCatalog ConstellationCatalog::load(const std::filesystem::path& csv_path) {
    return parse(read_text_file(csv_path), csv_path.string());
}

bool ConstellationCatalog::contains(std::string_view preset) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const Constellation& c) { return c.name == preset; });
}

const Constellation& ConstellationCatalog::get(std::string_view preset) const {
    for (const auto& c : entries_) {
        if (c.name == preset) return c;
    }
    throw CatalogError(fmt::format("unknown constellation preset '{}' (available: {})", preset,
                                   fmt::join(names(), ", ")));
}

std::vector<std::string> ConstellationCatalog::names() const {
    std::vector<std::string> out;
    for (const auto& c : entries_) out.push_back(c.name);
    return out;
}

Constellation build_constellation(const ConstellationCatalog& catalog, std::string_view preset) {
    return catalog.get(preset);
}

Constellation build_constellation(std::string name, std::vector<Shell> shells, double min_elevation_deg,
                                  std::optional<double> baseline_latency_ms) {
    Constellation c;
    c.name = std::move(name);
    c.shells = std::move(shells);
    c.min_elevation_deg = min_elevation_deg;
    c.baseline_latency_ms = baseline_latency_ms;
    validate(c);
    return c;
}

}  // namespace sipsim
