#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "sipsim/error.hpp"
#include "sipsim/scenario.hpp"
#include "support.hpp"

using namespace sipsim;

namespace {

ParsedScenario parse(const std::string& text, std::vector<std::string> overrides = {}) {
    return parse_scenario(text, testing::catalog(), overrides, "test.yaml");
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string random_name(testing::Gen& gen) {
    static const std::string alphabet = "abcXYZ09 -_:#\"'\\/.";
    std::string s = "n";
    const int len = gen.integer(0, 12);
    for (int i = 0; i < len; ++i) s += alphabet[static_cast<std::size_t>(gen.integer(0, static_cast<int>(alphabet.size()) - 1))];
    return s;
}

Scenario random_scenario(testing::Gen& gen) {
    const auto& cat = testing::catalog();
    Scenario s;
    if (gen.coin()) {
        const auto names = cat.constellations.names();
        s.constellation.preset = names[static_cast<std::size_t>(gen.integer(0, static_cast<int>(names.size()) - 1))];
        s.constellation.constellation = cat.constellations.get(s.constellation.preset);
        if (gen.coin()) s.constellation.constellation.min_elevation_deg = gen.uniform(0.0, 60.0);
    } else {
        Constellation& c = s.constellation.constellation;
        c.name = random_name(gen);
        c.min_elevation_deg = gen.uniform(0.0, 89.0);
        if (gen.coin()) c.baseline_latency_ms = gen.uniform(1.0, 300.0);
        if (gen.coin()) c.max_satellites = gen.integer(1, 500);
        const int shells = gen.integer(1, 3);
        for (int i = 0; i < shells; ++i) {
            Shell sh;
            sh.altitude_km = gen.uniform(300.0, 20000.0);
            sh.inclination_deg = gen.uniform(0.0, 180.0);
            sh.planes = gen.integer(1, 30);
            sh.sats_per_plane = gen.integer(1, 30);
            sh.phasing_factor = gen.integer(0, sh.planes - 1);
            sh.raan_span_deg = gen.uniform(0.0, 360.0);
            c.shells.push_back(sh);
        }
    }

    if (gen.coin()) {
        const auto& m = cat.missions[static_cast<std::size_t>(gen.integer(0, static_cast<int>(cat.missions.size()) - 1))];
        s.mission.preset = m.name;
        s.mission.name = gen.coin() ? m.name : random_name(gen);
    } else {
        s.mission.name = random_name(gen);
    }
    s.mission.altitude_km = gen.uniform(200.0, 1500.0);
    if (gen.coin()) s.mission.inclination_deg = gen.uniform(0.0, 180.0);
    s.mission.raan_deg = gen.uniform(-360.0, 360.0);
    s.mission.mean_anomaly_deg = gen.uniform(0.0, 360.0);

    s.horizon_s = gen.uniform(1.0, 2e5);
    s.coverage.coarse_step_s = gen.uniform(0.5, 60.0);
    s.coverage.refine_tolerance_s = gen.uniform(1e-4, 0.4);
    s.coverage.visibility_mode = gen.coin() ? VisibilityMode::Cone : VisibilityMode::LosOnly;
    s.coverage.ecdf_threshold_s = gen.uniform(0.0, 100.0);
    s.coverage.j2 = gen.coin();

    if (gen.coin()) {
        const auto names = cat.terminals.payload_names();
        s.link.terminal.preset = names[static_cast<std::size_t>(gen.integer(0, static_cast<int>(names.size()) - 1))];
        s.link.terminal.payload = *cat.terminals.find_payload(s.link.terminal.preset);
    } else {
        s.link.terminal.preset.clear();
        s.link.terminal.payload.name = "custom";
    }
    if (gen.coin()) s.link.terminal.payload.eirp_dbw = gen.uniform(20.0, 60.0);
    s.link.terminal.payload.g_over_t_dbk = gen.uniform(-5.0, 20.0);
    if (gen.coin()) {
        s.link.provider.preset.clear();
        s.link.provider.link.name = "custom";
    }
    s.link.provider.link.downlink_eirp_dbw = gen.uniform(30.0, 70.0);
    s.link.provider.link.uplink_bandwidth_hz = gen.uniform(1e5, 1e9);
    if (gen.coin()) s.link.modcod_table = "tables/" + random_name(gen) + ".csv";
    s.link.margin_db = gen.uniform(0.0, 5.0);
    s.link.rolloff = gen.uniform(0.0, 0.5);
    s.link.implementation_loss_db = gen.uniform(0.0, 4.0);
    s.link.step_s = gen.uniform(0.1, 120.0);
    s.link.visibility_mode = gen.coin() ? VisibilityMode::Cone : VisibilityMode::LosOnly;

    s.outputs.clear();
    for (auto kind : all_outputs()) {
        if (gen.coin()) s.outputs.push_back(kind);
    }
    std::shuffle(s.outputs.begin(), s.outputs.end(), gen.engine());
    return s;
}

}  // namespace

TEST_CASE("minimal scenario takes the documented defaults") {
    const auto p = parse("constellation: o3b-mpower-60\nmission:\n  altitude_km: 700\n");
    const Scenario& s = p.scenario;
    CHECK(s.constellation.preset == "o3b-mpower-60");
    CHECK(s.constellation.constellation.satellite_count() == 60);
    CHECK(s.mission.altitude_km == 700.0);
    CHECK(!s.mission.inclination_deg);
    CHECK(s.mission.name == "mission");
    CHECK(s.horizon_s == 86400.0);
    CHECK(s.coverage == CoverageSpec{});
    CHECK(s.link == LinkSpec{});
    CHECK(s.outputs == all_outputs());
    for (const char* key : {"horizon_s", "mission.inclination", "mission.raan_deg", "coverage.coarse_step_s",
                            "coverage.visibility_mode", "link.margin_db", "link.terminal", "outputs"}) {
        CHECK_MESSAGE(contains(p.defaults_used, key), key);
    }
    CHECK(p.overrides.empty());
}

TEST_CASE("presets resolve to bundled endpoint data") {
    const auto p = parse(
        "constellation: o3b-mpower-60\nmission: aqua\nlink:\n  terminal: ThinPack Ka100\n  provider: o3b-mpower\n");
    CHECK(p.scenario.link.terminal.payload.eirp_dbw == 46.0);
    CHECK(p.scenario.link.terminal.payload.g_over_t_dbk == 13.0);
    const ResolvedScenario r = resolve(p.scenario, testing::catalog());
    CHECK(r.satellites.size() == 60);
    CHECK(r.downlink == LinkEndpointParams{49.7, 13.0, 20e9, 100e6, 0.0});
    CHECK(r.uplink == LinkEndpointParams{46.0, 7.0, 30e9, 4e6, 0.0});
    CHECK(r.mission_inclination_deg == doctest::Approx(98.19).epsilon(1e-3));
    CHECK(r.coverage_config.min_elevation_deg == 5.0);
    CHECK(r.modcods.entries().size() > 20);

    const auto nano = parse("constellation: o3b-mpower-60\nmission: aqua\nlink: {terminal: nanosat}\n");
    CHECK(nano.scenario.link.terminal.payload.eirp_dbw == 36.4);
    CHECK(nano.scenario.link.terminal.payload.g_over_t_dbk == 2.2);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        parse("constellation:\n  preset: oneweb-630\n  minelev: 20\nmission: biomass\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "constellation.minelev");
        CHECK(std::string(e.what()).find("did you mean 'min_elevation'?") != std::string::npos);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(parse("constellation: o3b-mpower-60\nmision: aqua\n"), doctest::Contains("'mission'"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(parse("constellation: o3b-mpower-60\nmission: aqua\noutputs: [coverge]\n"),
                         doctest::Contains("'coverage'"), ValidationError);
}

TEST_CASE("errors name the field and the line") {
    try {
        parse("constellation: o3b-mpower-60\nmission: aqua\ncoverage:\n  coarse_step_s: fast\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "coverage.coarse_step_s");
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    try {
        parse("constellation: o3b-mpower-60\nmission: [aqua\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.source() == "test.yaml");
        CHECK(e.line() >= 2);
    }
    CHECK_THROWS_AS(parse("constellation: nope-1\nmission: aqua\n"), CatalogError);
    CHECK_THROWS_AS(parse("constellation: o3b-mpower-60\nmission: mars\n"), CatalogError);
    CHECK_THROWS_AS(parse("constellation: o3b-mpower-60\nmission: aqua\nlink: {terminal: Nightingale I}\n"),
                    CatalogError);
    CHECK_THROWS_AS(parse("mission: aqua\n"), ValidationError);
    CHECK_THROWS_AS(parse("constellation: o3b-mpower-60\n"), ValidationError);
    CHECK_THROWS_AS(parse(""), ValidationError);
    CHECK_THROWS_AS(parse("constellation: o3b-mpower-60\nmission: aqua\nhorizon_s: 0\n"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("constellation: o3b-mpower-60\nmission: {altitude_km: 9000}\n"),
                         doctest::Contains("mission.inclination"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse("constellation:\n  shells:\n    - {altitude_km: 500, inclination_deg: 50, planes: 0, sats_per_plane: 1}\n"
              "  min_elevation: 10\nmission: aqua\n"),
        doctest::Contains("constellation.shells[0].planes"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("constellation: {shells: []}\nmission: aqua\n"),
                         doctest::Contains("constellation.shells"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("constellation: o3b-mpower-60\nmission: aqua\ncoverage: {visibility_mode: fov}\n"),
                         doctest::Contains("coverage.visibility_mode"), ValidationError);
}

TEST_CASE("inline constellation and mission") {
    const auto p = parse(
        "constellation:\n  name: w\n  min_elevation: 10\n  shells:\n"
        "    - {altitude_km: 1200, inclination_deg: 55, planes: 6, sats_per_plane: 4}\n"
        "mission: {altitude_km: 500, inclination: 97.4, raan_deg: 45}\n");
    const Constellation& c = p.scenario.constellation.constellation;
    CHECK(c.name == "w");
    CHECK(c.shells[0].phasing_factor == 1);
    CHECK(c.shells[0].raan_span_deg == 360.0);
    CHECK(c.satellite_count() == 24);
    CHECK(p.scenario.mission.inclination_deg == 97.4);
    CHECK(contains(p.defaults_used, "constellation.shells[0].phasing_factor"));
}

TEST_CASE("dotted overrides") {
    const std::string base =
        "constellation: o3b-mpower-60\nmission: aqua\nlink:\n  terminal: ThinPack Ka100\n  margin_db: 0.5\n";
    const auto p = parse(base, {"link.margin_db=1.0", "mission.altitude_km=660", "coverage.visibility_mode=los-only",
                                "link.terminal.eirp_dbw=40"});
    CHECK(p.scenario.link.margin_db == 1.0);
    CHECK(p.scenario.mission.preset == "aqua");
    CHECK(p.scenario.mission.altitude_km == 660.0);
    CHECK(p.scenario.coverage.visibility_mode == VisibilityMode::LosOnly);
    CHECK(p.scenario.link.terminal.payload.eirp_dbw == 40.0);
    CHECK(p.scenario.link.terminal.payload.g_over_t_dbk == 13.0);
    CHECK(p.overrides.size() == 4);
    CHECK(p.overrides[0] == "link.margin_db=1.0");

    CHECK(parse(base, {"constellation=oneweb-630"}).scenario.constellation.constellation.satellite_count() == 630);
    CHECK(parse(base, {"outputs=[coverage]"}).scenario.outputs == std::vector<OutputKind>{OutputKind::Coverage});
    CHECK_THROWS_AS(parse(base, {"link.margin_db"}), ValidationError);
    CHECK_THROWS_AS(parse(base, {"=3"}), ValidationError);
    CHECK_THROWS_AS(parse(base, {"link..margin_db=3"}), ValidationError);
    CHECK_THROWS_WITH_AS(parse(base, {"link.margn_db=3"}), doctest::Contains("'margin_db'"), ValidationError);
    CHECK_THROWS_AS(parse(base, {"link.margin_db=abc"}), ValidationError);
}

TEST_CASE("round trip through the serializer") {
    testing::Gen gen(71);
    for (int k = 0; k < 300; ++k) {
        const Scenario s = random_scenario(gen);
        const std::string text = serialize_scenario(s);
        const auto back = parse(text);
        CHECK_MESSAGE(back.scenario == s, text);
        // An empty table path stands for the bundled table and is left out.
        const std::vector<std::string> expected_defaults =
            s.link.modcod_table.empty() ? std::vector<std::string>{"link.modcod_table"} : std::vector<std::string>{};
        CHECK(back.defaults_used == expected_defaults);
        // Serializing again is a fixed point.
        CHECK(serialize_scenario(back.scenario) == text);
    }
}

TEST_CASE("key suggestions") {
    constexpr std::string_view keys[] = {"preset", "name", "shells", "min_elevation", "baseline_latency_ms"};
    CHECK(suggest_key("minelev", keys) == "min_elevation");
    CHECK(suggest_key("shels", keys) == "shells");
    CHECK(suggest_key("nmae", keys) == "name");
    CHECK(suggest_key("zzzzzzzz", keys).empty());
}

TEST_CASE("reference page documents every key") {
    const std::string ref = scenario_reference();
    for (const char* key : {"constellation.min_elevation", "mission.inclination", "horizon_s", "coverage.coarse_step_s",
                            "coverage.ecdf_threshold_s", "link.terminal", "link.implementation_loss_db",
                            "link.visibility_mode", "outputs"}) {
        CHECK_MESSAGE(ref.find(std::string("`") + key + "`") != std::string::npos, key);
    }
}

TEST_CASE("shipped scenarios parse and resolve") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testing::source_dir() / "scenarios")) {
        if (entry.path().extension() != ".yaml") continue;
        const auto p = load_scenario(entry.path(), testing::catalog());
        CHECK_NOTHROW(resolve(p.scenario, testing::catalog()));
        ++count;
    }
    CHECK(count >= 7);
}
