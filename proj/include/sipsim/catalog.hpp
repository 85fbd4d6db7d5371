#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipsim/constellation.hpp"
#include "sipsim/terminals.hpp"

namespace sipsim {

struct MissionPreset {
    std::string name;
    double altitude_km = 0.0;
    std::optional<double> inclination_deg;  // nullopt: sun-synchronous
};

// Everything shipped under data/: constellations, terminals, link endpoints,
// reference missions and the default MODCOD table.
struct DataCatalog {
    std::filesystem::path data_dir;
    ConstellationCatalog constellations;
    TerminalCatalog terminals;
    std::vector<MissionPreset> missions;

    static DataCatalog load(const std::filesystem::path& data_dir);

    std::filesystem::path default_modcod_table() const { return data_dir / "dvbs2x_modcod.csv"; }
    std::optional<MissionPreset> find_mission(std::string_view name) const;
};

// $SIPSIM_DATA_DIR when set, otherwise the directory configured at build time.
std::filesystem::path default_data_dir();

}  // namespace sipsim
