#include "sipsim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

#include "sipsim/constants.hpp"
#include "sipsim/csv.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

std::string_view to_string(OutputKind kind) {
    switch (kind) {
        case OutputKind::Coverage: return "coverage";
        case OutputKind::Ecdf: return "ecdf";
        case OutputKind::Link: return "link";
        case OutputKind::Latency: return "latency";
        case OutputKind::Plots: return "plots";
    }
    return "?";
}

std::vector<OutputKind> all_outputs() {
    return {OutputKind::Coverage, OutputKind::Ecdf, OutputKind::Link, OutputKind::Latency, OutputKind::Plots};
}

namespace {

constexpr std::string_view kTopKeys[] = {"constellation", "mission", "horizon_s", "coverage", "link", "outputs"};
constexpr std::string_view kConstellationKeys[] = {"preset",          "name", "shells", "min_elevation",
                                                   "baseline_latency_ms", "max_satellites"};
constexpr std::string_view kShellKeys[] = {"altitude_km",    "inclination_deg", "planes",
                                           "sats_per_plane", "phasing_factor",  "raan_span_deg"};
constexpr std::string_view kMissionKeys[] = {"preset", "name", "altitude_km", "inclination", "raan_deg",
                                             "mean_anomaly_deg"};
constexpr std::string_view kCoverageKeys[] = {"coarse_step_s", "refine_tolerance_s", "visibility_mode",
                                              "ecdf_threshold_s", "j2"};
constexpr std::string_view kLinkKeys[] = {"terminal", "provider", "modcod_table",          "margin_db",
                                          "rolloff",  "step_s",   "implementation_loss_db", "visibility_mode"};
constexpr std::string_view kTerminalKeys[] = {"preset", "eirp_dbw", "g_over_t_dbk"};
constexpr std::string_view kProviderKeys[] = {"preset", "downlink", "uplink"};
constexpr std::string_view kDownlinkKeys[] = {"eirp_dbw", "frequency_hz", "bandwidth_hz"};
constexpr std::string_view kUplinkKeys[] = {"g_over_t_dbk", "frequency_hz", "bandwidth_hz"};
constexpr std::string_view kOutputNames[] = {"coverage", "ecdf", "link", "latency", "plots"};

std::string join_path(std::string_view path, std::string_view key) {
    return path.empty() ? std::string(key) : fmt::format("{}.{}", path, key);
}

int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] void fail(const std::string& field, const YAML::Node& node, const std::string& message) {
    const int line = node.IsDefined() ? line_of(node) : 0;
    throw ValidationError(field, line > 0 ? fmt::format("{} (line {})", message, line) : message);
}

// Re-raise a model validation error under the scenario path it came from.
template <typename Fn>
void with_prefix(const std::string& prefix, const YAML::Node& node, Fn&& fn) {
    try {
        fn();
    } catch (const ValidationError& e) {
        fail(join_path(prefix, e.field()), node, e.message());
    } catch (const DomainError& e) {
        fail(prefix, node, e.what());
    }
}

class Reader {
public:
    explicit Reader(std::vector<std::string>& defaults) : defaults_(defaults) {}

    void check_keys(const YAML::Node& map, const std::string& path, std::span<const std::string_view> allowed) {
        if (!map.IsMap()) fail(path, map, "expected a mapping");
        for (const auto& item : map) {
            const std::string key = item.first.Scalar();
            if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
            const std::string suggestion = suggest_key(key, allowed);
            fail(join_path(path, key), item.first,
                 suggestion.empty() ? "unknown key" : fmt::format("unknown key, did you mean '{}'?", suggestion));
        }
    }

    double number(const YAML::Node& node, const std::string& field) {
        if (!node.IsScalar()) fail(field, node, "expected a number");
        double value = 0.0;
        try {
            value = node.as<double>();
        } catch (const YAML::BadConversion&) {
            fail(field, node, fmt::format("'{}' is not a number", node.Scalar()));
        }
        if (!std::isfinite(value)) fail(field, node, "must be finite");
        return value;
    }

    int integer(const YAML::Node& node, const std::string& field) {
        if (!node.IsScalar()) fail(field, node, "expected an integer");
        try {
            return node.as<int>();
        } catch (const YAML::BadConversion&) {
            fail(field, node, fmt::format("'{}' is not an integer", node.Scalar()));
        }
    }

    bool boolean(const YAML::Node& node, const std::string& field) {
        if (!node.IsScalar()) fail(field, node, "expected true or false");
        try {
            return node.as<bool>();
        } catch (const YAML::BadConversion&) {
            fail(field, node, fmt::format("'{}' is not a boolean", node.Scalar()));
        }
    }

    std::string text(const YAML::Node& node, const std::string& field) {
        if (!node.IsScalar()) fail(field, node, "expected a string");
        return node.Scalar();
    }

    double number_or(const YAML::Node& map, std::string_view key, const std::string& path, double fallback) {
        const YAML::Node node = map[std::string(key)];
        if (!node) return defaulted(join_path(path, key), fallback);
        return number(node, join_path(path, key));
    }

    bool boolean_or(const YAML::Node& map, std::string_view key, const std::string& path, bool fallback) {
        const YAML::Node node = map[std::string(key)];
        if (!node) return defaulted(join_path(path, key), fallback);
        return boolean(node, join_path(path, key));
    }

    VisibilityMode mode_or(const YAML::Node& map, const std::string& path, VisibilityMode fallback) {
        const YAML::Node node = map["visibility_mode"];
        const std::string field = join_path(path, "visibility_mode");
        if (!node) return defaulted(field, fallback);
        VisibilityMode mode = fallback;
        with_prefix(path, node, [&] { mode = parse_visibility_mode(text(node, field)); });
        return mode;
    }

    template <typename T>
    T defaulted(std::string field, T value) {
        defaults_.push_back(std::move(field));
        return value;
    }

private:
    std::vector<std::string>& defaults_;
};

Shell parse_shell(Reader& r, const YAML::Node& node, const std::string& path) {
    r.check_keys(node, path, kShellKeys);
    auto required = [&](std::string_view key) {
        const YAML::Node n = node[std::string(key)];
        if (!n) fail(join_path(path, key), node, "missing required key");
        return n;
    };
    Shell shell;
    shell.altitude_km = r.number(required("altitude_km"), join_path(path, "altitude_km"));
    shell.inclination_deg = r.number(required("inclination_deg"), join_path(path, "inclination_deg"));
    shell.planes = r.integer(required("planes"), join_path(path, "planes"));
    shell.sats_per_plane = r.integer(required("sats_per_plane"), join_path(path, "sats_per_plane"));
    if (const YAML::Node n = node["phasing_factor"]) {
        shell.phasing_factor = r.integer(n, join_path(path, "phasing_factor"));
    } else {
        shell.phasing_factor = r.defaulted(join_path(path, "phasing_factor"), default_phasing_factor(shell.planes));
    }
    shell.raan_span_deg = r.number_or(node, "raan_span_deg", path, shell.planes > 1 ? 360.0 : 0.0);
    with_prefix(path, node, [&] { validate(shell); });
    return shell;
}

ConstellationSpec parse_constellation(Reader& r, const YAML::Node& node, const DataCatalog& catalog) {
    const std::string path = "constellation";
    ConstellationSpec spec;
    if (node.IsScalar()) {
        spec.preset = node.Scalar();
        spec.constellation = catalog.constellations.get(spec.preset);
        return spec;
    }
    r.check_keys(node, path, kConstellationKeys);
    Constellation& c = spec.constellation;
    if (const YAML::Node preset = node["preset"]) {
        spec.preset = r.text(preset, "constellation.preset");
        c = catalog.constellations.get(spec.preset);
    }
    if (const YAML::Node shells = node["shells"]) {
        if (!shells.IsSequence() || shells.size() == 0) fail("constellation.shells", shells, "expected a non-empty list");
        c.shells.clear();
        for (std::size_t i = 0; i < shells.size(); ++i) {
            c.shells.push_back(parse_shell(r, shells[i], fmt::format("constellation.shells[{}]", i)));
        }
    } else if (spec.preset.empty()) {
        fail("constellation", node, "needs either a preset or a shells list");
    }
    if (const YAML::Node name = node["name"]) {
        c.name = r.text(name, "constellation.name");
    } else if (spec.preset.empty()) {
        c.name = r.defaulted("constellation.name", std::string("custom"));
    }
    if (const YAML::Node elev = node["min_elevation"]) {
        c.min_elevation_deg = r.number(elev, "constellation.min_elevation");
    } else if (spec.preset.empty()) {
        fail("constellation.min_elevation", node, "missing required key for a custom constellation");
    }
    if (const YAML::Node latency = node["baseline_latency_ms"]) {
        c.baseline_latency_ms = r.number(latency, "constellation.baseline_latency_ms");
    }
    if (const YAML::Node cap = node["max_satellites"]) {
        c.max_satellites = r.integer(cap, "constellation.max_satellites");
    }
    with_prefix(path, node, [&] { validate(c); });
    return spec;
}

MissionSpec parse_mission(Reader& r, const YAML::Node& node, const DataCatalog& catalog) {
    const std::string path = "mission";
    MissionSpec m;
    auto apply_preset = [&](const std::string& name, const YAML::Node& at) {
        const auto preset = catalog.find_mission(name);
        if (!preset) {
            std::vector<std::string> names;
            for (const auto& p : catalog.missions) names.push_back(p.name);
            (void)at;
            throw CatalogError(
                fmt::format("unknown mission preset '{}' (available: {})", name, fmt::join(names, ", ")));
        }
        m.preset = name;
        m.name = name;
        m.altitude_km = preset->altitude_km;
        m.inclination_deg = preset->inclination_deg;
    };

    if (node.IsScalar()) {
        apply_preset(node.Scalar(), node);
        r.defaulted("mission.raan_deg", 0.0);
        r.defaulted("mission.mean_anomaly_deg", 0.0);
    } else {
        r.check_keys(node, path, kMissionKeys);
        if (const YAML::Node preset = node["preset"]) apply_preset(r.text(preset, "mission.preset"), preset);
        if (const YAML::Node name = node["name"]) {
            m.name = r.text(name, "mission.name");
        } else if (m.preset.empty()) {
            r.defaulted("mission.name", 0);
        }
        if (const YAML::Node alt = node["altitude_km"]) {
            m.altitude_km = r.number(alt, "mission.altitude_km");
        } else if (m.preset.empty()) {
            fail("mission.altitude_km", node, "missing required key");
        }
        if (const YAML::Node inc = node["inclination"]) {
            if (inc.IsScalar() && inc.Scalar() == "sso") {
                m.inclination_deg.reset();
            } else {
                m.inclination_deg = r.number(inc, "mission.inclination");
            }
        } else if (m.preset.empty()) {
            r.defaulted("mission.inclination", 0);
        }
        m.raan_deg = r.number_or(node, "raan_deg", path, 0.0);
        m.mean_anomaly_deg = r.number_or(node, "mean_anomaly_deg", path, 0.0);
    }

    if (!(m.altitude_km > 0.0)) fail("mission.altitude_km", node, "must be positive");
    if (m.inclination_deg) {
        if (*m.inclination_deg < 0.0 || *m.inclination_deg > 180.0) {
            fail("mission.inclination", node, "must lie in [0, 180] degrees");
        }
    } else {
        with_prefix("mission.inclination", node, [&] { sso_inclination(m.altitude_km); });
    }
    return m;
}

CoverageSpec parse_coverage(Reader& r, const YAML::Node& node) {
    const std::string path = "coverage";
    CoverageSpec c;
    if (!node) {
        for (auto key : kCoverageKeys) r.defaulted(join_path(path, key), 0);
        return c;
    }
    r.check_keys(node, path, kCoverageKeys);
    c.coarse_step_s = r.number_or(node, "coarse_step_s", path, c.coarse_step_s);
    c.refine_tolerance_s = r.number_or(node, "refine_tolerance_s", path, c.refine_tolerance_s);
    c.visibility_mode = r.mode_or(node, path, c.visibility_mode);
    c.ecdf_threshold_s = r.number_or(node, "ecdf_threshold_s", path, c.ecdf_threshold_s);
    c.j2 = r.boolean_or(node, "j2", path, c.j2);
    if (!(c.ecdf_threshold_s >= 0.0)) fail("coverage.ecdf_threshold_s", node, "must be non-negative");
    VisibilityConfig cfg;
    cfg.coarse_step_s = c.coarse_step_s;
    cfg.refine_tolerance_s = c.refine_tolerance_s;
    with_prefix(path, node, [&] { validate(cfg); });
    return c;
}

TerminalSpec parse_terminal(Reader& r, const YAML::Node& node, const DataCatalog& catalog) {
    TerminalSpec t;
    auto apply_preset = [&](const std::string& name) {
        const auto payload = catalog.terminals.find_payload(name);
        if (!payload) {
            throw CatalogError(fmt::format("unknown terminal '{}' (available: {})", name,
                                           fmt::join(catalog.terminals.payload_names(), ", ")));
        }
        t.preset = name;
        t.payload = *payload;
    };
    if (!node) {
        r.defaulted("link.terminal", 0);
        return t;
    }
    if (node.IsScalar()) {
        apply_preset(node.Scalar());
        return t;
    }
    r.check_keys(node, "link.terminal", kTerminalKeys);
    if (const YAML::Node preset = node["preset"]) {
        apply_preset(r.text(preset, "link.terminal.preset"));
    } else {
        t.preset.clear();
        t.payload.name = "custom";
        if (!node["eirp_dbw"] || !node["g_over_t_dbk"]) {
            fail("link.terminal", node, "an inline terminal needs eirp_dbw and g_over_t_dbk");
        }
    }
    if (const YAML::Node n = node["eirp_dbw"]) t.payload.eirp_dbw = r.number(n, "link.terminal.eirp_dbw");
    if (const YAML::Node n = node["g_over_t_dbk"]) t.payload.g_over_t_dbk = r.number(n, "link.terminal.g_over_t_dbk");
    return t;
}

ProviderSpec parse_provider(Reader& r, const YAML::Node& node, const DataCatalog& catalog) {
    ProviderSpec p;
    auto apply_preset = [&](const std::string& name) {
        const auto preset = catalog.terminals.find_provider(name);
        if (!preset) throw CatalogError(fmt::format("unknown provider link preset '{}'", name));
        p.preset = name;
        p.link = *preset;
    };
    if (!node) {
        r.defaulted("link.provider", 0);
        return p;
    }
    if (node.IsScalar()) {
        apply_preset(node.Scalar());
        return p;
    }
    r.check_keys(node, "link.provider", kProviderKeys);
    const YAML::Node preset = node["preset"];
    if (preset) {
        apply_preset(r.text(preset, "link.provider.preset"));
    } else {
        p.preset.clear();
        p.link.name = "custom";
        if (!node["downlink"] || !node["uplink"]) {
            fail("link.provider", node, "an inline provider needs downlink and uplink sections");
        }
    }
    auto section = [&](std::string_view key, std::span<const std::string_view> keys, double& power, double& freq,
                       double& bw, std::string_view power_key) {
        const YAML::Node n = node[std::string(key)];
        if (!n) return;
        const std::string path = join_path("link.provider", key);
        r.check_keys(n, path, keys);
        auto get = [&](std::string_view k, double& out) {
            if (const YAML::Node v = n[std::string(k)]) {
                out = r.number(v, join_path(path, k));
            } else if (!preset) {
                fail(join_path(path, k), n, "missing required key");
            }
        };
        get(power_key, power);
        get("frequency_hz", freq);
        get("bandwidth_hz", bw);
    };
    section("downlink", kDownlinkKeys, p.link.downlink_eirp_dbw, p.link.downlink_frequency_hz,
            p.link.downlink_bandwidth_hz, "eirp_dbw");
    section("uplink", kUplinkKeys, p.link.uplink_g_over_t_dbk, p.link.uplink_frequency_hz,
            p.link.uplink_bandwidth_hz, "g_over_t_dbk");
    return p;
}

LinkSpec parse_link(Reader& r, const YAML::Node& node, const DataCatalog& catalog) {
    const std::string path = "link";
    LinkSpec l;
    if (!node) {
        for (auto key : kLinkKeys) r.defaulted(join_path(path, key), 0);
        return l;
    }
    r.check_keys(node, path, kLinkKeys);
    l.terminal = parse_terminal(r, node["terminal"], catalog);
    l.provider = parse_provider(r, node["provider"], catalog);
    if (const YAML::Node table = node["modcod_table"]) {
        l.modcod_table = r.text(table, "link.modcod_table");
    } else {
        r.defaulted("link.modcod_table", 0);
    }
    l.margin_db = r.number_or(node, "margin_db", path, l.margin_db);
    l.rolloff = r.number_or(node, "rolloff", path, l.rolloff);
    l.implementation_loss_db = r.number_or(node, "implementation_loss_db", path, l.implementation_loss_db);
    l.step_s = r.number_or(node, "step_s", path, l.step_s);
    l.visibility_mode = r.mode_or(node, path, l.visibility_mode);
    if (!(l.rolloff >= 0.0)) fail("link.rolloff", node["rolloff"], "must be >= 0");
    if (!(l.step_s > 0.0)) fail("link.step_s", node["step_s"], "must be positive");
    return l;
}

std::vector<OutputKind> parse_outputs(Reader& r, const YAML::Node& node) {
    if (!node) return r.defaulted("outputs", all_outputs());
    if (!node.IsSequence()) fail("outputs", node, "expected a list");
    std::vector<OutputKind> out;
    for (const auto& item : node) {
        const std::string name = r.text(item, "outputs");
        const auto* it = std::find(std::begin(kOutputNames), std::end(kOutputNames), name);
        if (it == std::end(kOutputNames)) {
            const std::string s = suggest_key(name, kOutputNames);
            fail("outputs", item,
                 s.empty() ? fmt::format("unknown output '{}'", name)
                           : fmt::format("unknown output '{}', did you mean '{}'?", name, s));
        }
        const auto kind = static_cast<OutputKind>(it - std::begin(kOutputNames));
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    }
    return out;
}

void apply_override(YAML::Node& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == assignment.size()) {
        throw ValidationError("override", fmt::format("'{}' is not of the form key=value", assignment));
    }
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const auto dot = key.find('.', begin);
        parts.push_back(key.substr(begin, dot - begin));
        if (dot == std::string::npos) break;
        begin = dot + 1;
    }
    if (std::any_of(parts.begin(), parts.end(), [](const std::string& p) { return p.empty(); })) {
        throw ValidationError("override", fmt::format("'{}' has an empty key segment", key));
    }

    YAML::Node parsed;
    try {
        parsed = YAML::Load(value);
    } catch (const YAML::Exception&) {
        parsed = YAML::Node(value);
    }

    YAML::Node node = root;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        YAML::Node child = node[parts[i]];
        if (!child.IsDefined() || child.IsNull()) {
            node[parts[i]] = YAML::Node(YAML::NodeType::Map);
        } else if (child.IsScalar()) {
            // A preset given by name is promoted to {preset: name}.
            YAML::Node promoted(YAML::NodeType::Map);
            promoted["preset"] = child.Scalar();
            node[parts[i]] = promoted;
        } else if (!child.IsMap()) {
            throw ValidationError(key, "override path crosses a non-mapping value");
        }
        YAML::Node next = node[parts[i]];
        node.reset(next);
    }
    node[parts.back()] = parsed;
}

}  // namespace

std::string suggest_key(std::string_view key, std::span<const std::string_view> allowed) {
    auto is_subsequence = [](std::string_view needle, std::string_view hay) {
        std::size_t j = 0;
        for (char c : hay) {
            if (j < needle.size() && needle[j] == c) ++j;
        }
        return j == needle.size();
    };
    std::string best;
    for (auto candidate : allowed) {
        if (key.size() >= 3 && is_subsequence(key, candidate) && (best.empty() || candidate.size() < best.size())) {
            best = std::string(candidate);
        }
    }
    if (!best.empty()) return best;

    auto levenshtein = [](std::string_view a, std::string_view b) {
        std::vector<std::size_t> row(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            std::size_t diag = row[0];
            row[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j) {
                const std::size_t up = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
                diag = up;
            }
        }
        return row[b.size()];
    };
    std::size_t best_distance = std::max<std::size_t>(2, key.size() / 3) + 1;
    for (auto candidate : allowed) {
        const std::size_t d = levenshtein(key, candidate);
        if (d < best_distance) {
            best_distance = d;
            best = std::string(candidate);
        }
    }
    return best;
}

ParsedScenario parse_scenario(std::string_view text, const DataCatalog& catalog, std::span<const std::string> overrides,
                              std::string source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(source, e.mark.line + 1, e.msg);
    }
    if (!root || root.IsNull()) throw ValidationError("", fmt::format("{}: scenario is empty", source));
    if (!root.IsMap()) throw ValidationError("", fmt::format("{}: scenario must be a mapping", source));

    ParsedScenario parsed;
    for (const auto& assignment : overrides) {
        apply_override(root, assignment);
        parsed.overrides.push_back(assignment);
    }

    Reader r(parsed.defaults_used);
    r.check_keys(root, "", kTopKeys);
    Scenario& s = parsed.scenario;

    const YAML::Node constellation = root["constellation"];
    if (!constellation) fail("constellation", root, "missing required key");
    s.constellation = parse_constellation(r, constellation, catalog);

    const YAML::Node mission = root["mission"];
    if (!mission) fail("mission", root, "missing required key");
    s.mission = parse_mission(r, mission, catalog);

    s.horizon_s = r.number_or(root, "horizon_s", "", s.horizon_s);
    if (!(s.horizon_s > 0.0)) fail("horizon_s", root["horizon_s"], "must be positive");

    s.coverage = parse_coverage(r, root["coverage"]);
    s.link = parse_link(r, root["link"], catalog);
    s.outputs = parse_outputs(r, root["outputs"]);
    return parsed;
}

ParsedScenario load_scenario(const std::filesystem::path& path, const DataCatalog& catalog,
                             std::span<const std::string> overrides) {
    return parse_scenario(read_text_file(path), catalog, overrides, path.string());
}

namespace {

std::string num(double v) { return fmt::format("{}", v); }

void emit_string(YAML::Emitter& out, std::string_view key, const std::string& value) {
    out << YAML::Key << std::string(key) << YAML::Value << YAML::DoubleQuoted << value;
}

void emit_number(YAML::Emitter& out, std::string_view key, double value) {
    out << YAML::Key << std::string(key) << YAML::Value << num(value);
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
    YAML::Emitter out;
    out << YAML::BeginMap;

    const Constellation& c = s.constellation.constellation;
    out << YAML::Key << "constellation" << YAML::Value << YAML::BeginMap;
    if (!s.constellation.preset.empty()) emit_string(out, "preset", s.constellation.preset);
    emit_string(out, "name", c.name);
    emit_number(out, "min_elevation", c.min_elevation_deg);
    if (c.baseline_latency_ms) emit_number(out, "baseline_latency_ms", *c.baseline_latency_ms);
    if (c.max_satellites) out << YAML::Key << "max_satellites" << YAML::Value << *c.max_satellites;
    out << YAML::Key << "shells" << YAML::Value << YAML::BeginSeq;
    for (const auto& shell : c.shells) {
        out << YAML::Flow << YAML::BeginMap;
        emit_number(out, "altitude_km", shell.altitude_km);
        emit_number(out, "inclination_deg", shell.inclination_deg);
        out << YAML::Key << "planes" << YAML::Value << shell.planes;
        out << YAML::Key << "sats_per_plane" << YAML::Value << shell.sats_per_plane;
        out << YAML::Key << "phasing_factor" << YAML::Value << shell.phasing_factor;
        emit_number(out, "raan_span_deg", shell.raan_span_deg);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;

    const MissionSpec& m = s.mission;
    out << YAML::Key << "mission" << YAML::Value << YAML::BeginMap;
    if (!m.preset.empty()) emit_string(out, "preset", m.preset);
    emit_string(out, "name", m.name);
    emit_number(out, "altitude_km", m.altitude_km);
    out << YAML::Key << "inclination" << YAML::Value << (m.inclination_deg ? num(*m.inclination_deg) : "sso");
    emit_number(out, "raan_deg", m.raan_deg);
    emit_number(out, "mean_anomaly_deg", m.mean_anomaly_deg);
    out << YAML::EndMap;

    emit_number(out, "horizon_s", s.horizon_s);

    out << YAML::Key << "coverage" << YAML::Value << YAML::BeginMap;
    emit_number(out, "coarse_step_s", s.coverage.coarse_step_s);
    emit_number(out, "refine_tolerance_s", s.coverage.refine_tolerance_s);
    out << YAML::Key << "visibility_mode" << YAML::Value << std::string(to_string(s.coverage.visibility_mode));
    emit_number(out, "ecdf_threshold_s", s.coverage.ecdf_threshold_s);
    out << YAML::Key << "j2" << YAML::Value << s.coverage.j2;
    out << YAML::EndMap;

    const LinkSpec& l = s.link;
    out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "terminal" << YAML::Value << YAML::BeginMap;
    if (!l.terminal.preset.empty()) emit_string(out, "preset", l.terminal.preset);
    emit_number(out, "eirp_dbw", l.terminal.payload.eirp_dbw);
    emit_number(out, "g_over_t_dbk", l.terminal.payload.g_over_t_dbk);
    out << YAML::EndMap;
    out << YAML::Key << "provider" << YAML::Value << YAML::BeginMap;
    if (!l.provider.preset.empty()) emit_string(out, "preset", l.provider.preset);
    out << YAML::Key << "downlink" << YAML::Value << YAML::BeginMap;
    emit_number(out, "eirp_dbw", l.provider.link.downlink_eirp_dbw);
    emit_number(out, "frequency_hz", l.provider.link.downlink_frequency_hz);
    emit_number(out, "bandwidth_hz", l.provider.link.downlink_bandwidth_hz);
    out << YAML::EndMap;
    out << YAML::Key << "uplink" << YAML::Value << YAML::BeginMap;
    emit_number(out, "g_over_t_dbk", l.provider.link.uplink_g_over_t_dbk);
    emit_number(out, "frequency_hz", l.provider.link.uplink_frequency_hz);
    emit_number(out, "bandwidth_hz", l.provider.link.uplink_bandwidth_hz);
    out << YAML::EndMap << YAML::EndMap;
    if (!l.modcod_table.empty()) emit_string(out, "modcod_table", l.modcod_table);
    emit_number(out, "margin_db", l.margin_db);
    emit_number(out, "rolloff", l.rolloff);
    emit_number(out, "implementation_loss_db", l.implementation_loss_db);
    emit_number(out, "step_s", l.step_s);
    out << YAML::Key << "visibility_mode" << YAML::Value << std::string(to_string(l.visibility_mode));
    out << YAML::EndMap;

    out << YAML::Key << "outputs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto kind : s.outputs) out << std::string(to_string(kind));
    out << YAML::EndSeq;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

ResolvedScenario resolve(const Scenario& s, const DataCatalog& catalog) {
    ResolvedScenario r;
    r.constellation = s.constellation.constellation;
    r.satellites = build_satellites(r.constellation);

    r.mission_altitude_km = s.mission.altitude_km;
    r.mission_inclination_deg = s.mission.inclination_deg ? *s.mission.inclination_deg
                                                          : sso_inclination(s.mission.altitude_km);
    r.mission.a_km = kEarthRadiusKm + s.mission.altitude_km;
    r.mission.e = 0.0;
    r.mission.inclination = r.mission_inclination_deg * kDegToRad;
    r.mission.raan = wrap_two_pi(s.mission.raan_deg * kDegToRad);
    r.mission.argp = 0.0;
    r.mission.mean_anomaly = wrap_two_pi(s.mission.mean_anomaly_deg * kDegToRad);

    r.horizon = Horizon{Epoch{0.0}, Epoch{s.horizon_s}};

    r.coverage_config.mode = s.coverage.visibility_mode;
    r.coverage_config.min_elevation_deg = r.constellation.min_elevation_deg;
    r.coverage_config.coarse_step_s = s.coverage.coarse_step_s;
    r.coverage_config.refine_tolerance_s = s.coverage.refine_tolerance_s;
    r.coverage_config.j2 = s.coverage.j2;

    const auto& provider = s.link.provider.link;
    const auto& payload = s.link.terminal.payload;
    r.downlink = {provider.downlink_eirp_dbw, payload.g_over_t_dbk, provider.downlink_frequency_hz,
                  provider.downlink_bandwidth_hz, s.link.rolloff};
    r.uplink = {payload.eirp_dbw, provider.uplink_g_over_t_dbk, provider.uplink_frequency_hz,
                provider.uplink_bandwidth_hz, s.link.rolloff};
    try {
        validate(r.downlink);
        validate(r.uplink);
    } catch (const ValidationError& e) {
        throw ValidationError("link.provider." + e.field(), e.message());
    }

    const std::filesystem::path table =
        s.link.modcod_table.empty() ? catalog.default_modcod_table() : std::filesystem::path(s.link.modcod_table);
    r.modcods = ModCodTable::load(table);
    return r;
}

std::string scenario_reference() {
    struct Entry {
        std::string_view key, fallback, description;
    };
    static constexpr Entry entries[] = {
        {"constellation", "(required)", "Preset name, or a mapping with the keys below."},
        {"constellation.preset", "-", "Catalog preset: starlink-4408, oneweb-630, oneweb-6372, o3b-mpower-60, "
                                      "telesat-1671, kuiper-7774."},
        {"constellation.name", "preset name / custom", "Display name."},
        {"constellation.shells", "preset shells", "List of shells (required without a preset)."},
        {"constellation.shells[].altitude_km", "(required)", "Shell altitude above the equatorial radius."},
        {"constellation.shells[].inclination_deg", "(required)", "Orbit inclination."},
        {"constellation.shells[].planes", "(required)", "Number of orbital planes."},
        {"constellation.shells[].sats_per_plane", "(required)", "Satellites per plane."},
        {"constellation.shells[].phasing_factor", "1 (multi-plane) / 0", "Walker phasing factor F."},
        {"constellation.shells[].raan_span_deg", "360 (multi-plane) / 0", "Node span the planes are spread over."},
        {"constellation.min_elevation", "preset value", "Minimum ground service elevation, degrees."},
        {"constellation.baseline_latency_ms", "preset value", "Ground-user latency used by the latency model."},
        {"constellation.max_satellites", "preset value", "Keep only the first N satellites, plane by plane."},
        {"mission", "(required)", "Mission preset name (aqua, biomass, vleo-300) or a mapping."},
        {"mission.preset", "-", "Start from a mission preset."},
        {"mission.name", "preset name / mission", "Display name."},
        {"mission.altitude_km", "(required without preset)", "Circular orbit altitude."},
        {"mission.inclination", "sso", "Degrees, or sso for the sun-synchronous inclination."},
        {"mission.raan_deg", "0", "Right ascension of the ascending node."},
        {"mission.mean_anomaly_deg", "0", "Mean anomaly at the scenario epoch."},
        {"horizon_s", "86400", "Analysis horizon starting at t = 0."},
        {"coverage.coarse_step_s", "10", "Coarse scan step of the visibility search."},
        {"coverage.refine_tolerance_s", "0.01", "Bisection tolerance for access boundaries."},
        {"coverage.visibility_mode", "cone", "cone or los-only."},
        {"coverage.ecdf_threshold_s", "20", "Shortest useful single access for the eCDF statistic."},
        {"coverage.j2", "true", "Apply J2 secular drift to every orbit."},
        {"link.terminal", "ThinPack Ka100", "Terminal preset name, or {preset, eirp_dbw, g_over_t_dbk}."},
        {"link.provider", "o3b-mpower", "Provider link preset, or {preset, downlink: {eirp_dbw, frequency_hz, "
                                        "bandwidth_hz}, uplink: {g_over_t_dbk, frequency_hz, bandwidth_hz}}."},
        {"link.modcod_table", "bundled DVB-S2X table", "CSV with name, spectral_efficiency, esn0_threshold_db."},
        {"link.margin_db", "0", "Margin subtracted before MODCOD selection."},
        {"link.rolloff", "0", "Symbol rate = bandwidth / (1 + rolloff)."},
        {"link.implementation_loss_db", "0", "Loss subtracted from both Es/N0 values."},
        {"link.step_s", "10", "Sampling step of the link time series."},
        {"link.visibility_mode", "los-only", "Visibility rule for serving-satellite selection."},
        {"outputs", "[coverage, ecdf, link, latency, plots]", "Analyses run by the report subcommand."},
    };
    std::string out = "# Scenario file reference\n\n"
                      "Scenarios are YAML documents. Unknown keys are rejected. Every key below\n"
                      "can also be set from the command line with `--set key=value`.\n\n"
                      "| key | default | description |\n|---|---|---|\n";
    for (const auto& e : entries) out += fmt::format("| `{}` | {} | {} |\n", e.key, e.fallback, e.description);
    return out;
}

}  // namespace sipsim
