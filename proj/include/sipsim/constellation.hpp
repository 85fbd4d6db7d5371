#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipsim/orbit.hpp"

namespace sipsim {

using SatId = std::uint32_t;

// One Walker-style shell. Angles in degrees.
struct Shell {
    double altitude_km = 0.0;
    double inclination_deg = 0.0;
    int planes = 1;
    int sats_per_plane = 1;
    int phasing_factor = 0;
    double raan_span_deg = 360.0;

    int satellite_count() const noexcept { return planes * sats_per_plane; }
    bool operator==(const Shell&) const = default;
};

// Walker phasing used when a catalog row leaves it blank.
int default_phasing_factor(int planes);

void validate(const Shell& shell);

struct Constellation {
    std::string name;
    std::vector<Shell> shells;
    double min_elevation_deg = 0.0;
    std::optional<double> baseline_latency_ms;
    // Deployed subset: satellites are taken shell by shell, plane by plane.
    std::optional<int> max_satellites;

    int satellite_count() const;
    bool operator==(const Constellation&) const = default;
};

void validate(const Constellation& c);

struct Satellite {
    SatId id = 0;
    int shell = 0;
    int plane = 0;
    int slot = 0;
    OrbitElements elements;
};

// Circular elements for every slot of `shell`, plane-major order.
std::vector<OrbitElements> build_shell(const Shell& shell, Epoch epoch = {});

// All satellites of a constellation with ids 0..N-1 in declaration order.
std::vector<Satellite> build_satellites(const Constellation& c, Epoch epoch = {});

// Presets loaded from the bundled constellation table.
class ConstellationCatalog {
public:
    static ConstellationCatalog load(const std::filesystem::path& csv_path);
    static ConstellationCatalog parse(std::string_view csv_text, std::string source);

    const Constellation& get(std::string_view preset) const;
    bool contains(std::string_view preset) const;
    std::vector<std::string> names() const;
    const std::vector<Constellation>& entries() const noexcept { return entries_; }

private:
    std::vector<Constellation> entries_;
};

Constellation build_constellation(const ConstellationCatalog& catalog, std::string_view preset);

Constellation build_constellation(std::string name, std::vector<Shell> shells, double min_elevation_deg,
                                  std::optional<double> baseline_latency_ms = std::nullopt);

}  // namespace sipsim
