#include "sipsim/catalog.hpp"

#include <cstdlib>

#include "sipsim/csv.hpp"
#include "sipsim/error.hpp"

#ifndef SIPSIM_DEFAULT_DATA_DIR
#define SIPSIM_DEFAULT_DATA_DIR "data"
#endif

namespace sipsim {

DataCatalog DataCatalog::load(const std::filesystem::path& data_dir) {
    DataCatalog catalog;
    catalog.data_dir = data_dir;
    catalog.constellations = ConstellationCatalog::load(data_dir / "constellations.csv");
    catalog.terminals = TerminalCatalog::load(data_dir / "terminals.csv", data_dir / "link_endpoints.csv");

    const CsvTable missions = CsvTable::load(data_dir / "missions.csv");
    for (const auto& row : missions.rows()) {
        MissionPreset m;
        m.name = missions.text(row, "name");
        m.altitude_km = missions.number(row, "altitude_km");
        if (missions.text(row, "inclination_deg") != "sso") m.inclination_deg = missions.number(row, "inclination_deg");
        catalog.missions.push_back(std::move(m));
    }
    return catalog;
}

std::optional<MissionPreset> DataCatalog::find_mission(std::string_view name) const {
    for (const auto& m : missions) {
        if (m.name == name) return m;
    }
    return std::nullopt;
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("SIPSIM_DATA_DIR"); env && *env) return env;
    return SIPSIM_DEFAULT_DATA_DIR;
}

}  // namespace sipsim
