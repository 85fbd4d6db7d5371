#include <doctest.h>

#include <cmath>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"
#include "sipsim/link.hpp"
#include "support.hpp"

using namespace sipsim;
using namespace sipsim::constants;

namespace {

const ModCodTable& bundled() {
    static const ModCodTable t = ModCodTable::load(testing::catalog().default_modcod_table());
    return t;
}

// Linear scan: best efficiency among qualifying entries, lowest threshold on ties.
std::optional<ModCodEntry> scan_oracle(double esn0, std::span<const ModCodEntry> table, double margin) {
    std::optional<ModCodEntry> best;
    for (const auto& e : table) {
        if (!(e.esn0_threshold_db <= esn0 - margin)) continue;
        if (!best || e.spectral_efficiency > best->spectral_efficiency ||
            (e.spectral_efficiency == best->spectral_efficiency && e.esn0_threshold_db < best->esn0_threshold_db)) {
            best = e;
        }
    }
    return best;
}

LinkScenario o3b_aqua(const PayloadPreset& payload) {
    const auto& cat = testing::catalog();
    const auto provider = *cat.terminals.find_provider("o3b-mpower");
    LinkScenario sc;
    const auto& c = cat.constellations.get("o3b-mpower-60");
    sc.satellites = build_satellites(c);
    sc.min_elevation_deg = c.min_elevation_deg;
    sc.mission.a_km = kEarthRadiusKm + 700.0;
    sc.mission.inclination = sso_inclination(700.0) * kDegToRad;
    sc.horizon = Horizon{Epoch{0.0}, Epoch{86400.0}};
    sc.step_s = 60.0;
    sc.downlink = {provider.downlink_eirp_dbw, payload.g_over_t_dbk, provider.downlink_frequency_hz,
                   provider.downlink_bandwidth_hz, 0.0};
    sc.uplink = {payload.eirp_dbw, provider.uplink_g_over_t_dbk, provider.uplink_frequency_hz,
                 provider.uplink_bandwidth_hz, 0.0};
    sc.modcods = bundled();
    return sc;
}

}  // namespace

TEST_CASE("free-space path loss") {
    // 20 log10(4 pi d f / c) evaluated by hand.
    CHECK(fspl(7362.0, 20e9) == doctest::Approx(195.81).epsilon(0.01 / 195.81));
    CHECK(fspl(7362.0, 30e9) == doctest::Approx(fspl(7362.0, 20e9) + 20 * std::log10(1.5)).epsilon(1e-12));
    testing::Gen gen(51);
    for (int k = 0; k < 1000; ++k) {
        const double d = gen.uniform(1.0, 1e5), f = gen.uniform(1e8, 1e11);
        CHECK(std::abs(fspl(2 * d, f) - fspl(d, f) - 20 * std::log10(2.0)) < 1e-9);
        CHECK(std::abs(fspl(2 * d, f) - fspl(d, f) - 6.0206) < 1e-4);
    }
    CHECK_THROWS_AS(fspl(0.0, 20e9), DomainError);
}

TEST_CASE("Es/N0 hand values for the O3b / Ka100 link") {
    const LinkEndpointParams dl{49.7, 13.0, 20e9, 100e6, 0.0};
    const LinkEndpointParams ul{46.0, 7.0, 30e9, 4e6, 0.0};
    CHECK(es_n0(dl, 7362.0) == doctest::Approx(15.49).epsilon(0.01 / 15.49));
    CHECK(es_n0(ul, 7362.0) == doctest::Approx(16.25).epsilon(0.01 / 16.25));
    // Geometric extremes of the O3b / 700 km geometry.
    const double spread = es_n0(ul, 7362.0) - es_n0(ul, max_los_range(8062.0, 700.0));
    CHECK(spread >= 6.5);
    CHECK(spread <= 6.8);
    // rolloff widens the symbol: Rs = B / (1 + r).
    const LinkEndpointParams ro{49.7, 13.0, 20e9, 100e6, 0.25};
    CHECK(es_n0(ro, 7362.0) - es_n0(dl, 7362.0) == doctest::Approx(10 * std::log10(1.25)));
}

TEST_CASE("Es/N0 monotonicity") {
    testing::Gen gen(52);
    for (int k = 0; k < 2000; ++k) {
        LinkEndpointParams p{gen.uniform(20, 60), gen.uniform(-5, 20), gen.uniform(1e9, 4e10), gen.uniform(1e6, 5e8),
                             gen.uniform(0, 0.5)};
        const double d = gen.uniform(100, 40000);
        const double delta = gen.uniform(1e-3, 5);
        CHECK(es_n0(p, d + delta) < es_n0(p, d));
        LinkEndpointParams q = p;
        q.eirp_dbw += delta;
        CHECK(es_n0(q, d) > es_n0(p, d));
        q = p;
        q.g_over_t_dbk += delta;
        CHECK(es_n0(q, d) > es_n0(p, d));
    }
}

TEST_CASE("maximum line-of-sight range") {
    CHECK(max_los_range(8062.0, 700.0) == doctest::Approx(16020.0).epsilon(10.0 / 16020.0));
    const double rs = kEarthRadiusKm + 8062.0;
    CHECK(max_los_range(8062.0, 0.0) == doctest::Approx(std::sqrt(rs * rs - kEarthRadiusKm * kEarthRadiusKm)));
    CHECK_THROWS_AS(max_los_range(700.0, 700.0), DomainError);
    CHECK_THROWS_AS(max_los_range(700.0, 800.0), DomainError);
}

TEST_CASE("MODCOD selection equals a linear-scan oracle") {
    const auto table = bundled().entries();
    REQUIRE(table.size() > 20);
    for (double margin : {0.0, 1.0, 2.5}) {
        for (double esn0 = -6.0; esn0 <= 25.0; esn0 += 0.001) {
            const auto got = select_modcod(esn0, table, margin);
            const auto want = scan_oracle(esn0, table, margin);
            REQUIRE(got.has_value() == want.has_value());
            if (got) CHECK(*got == *want);
        }
        for (const auto& e : table) {
            const double x = e.esn0_threshold_db + margin;
            CHECK(select_modcod(x, table, margin) == scan_oracle(x, table, margin));
        }
    }
    // The boundary itself qualifies.
    for (const auto& e : table) CHECK(*select_modcod(e.esn0_threshold_db, table, 0.0) == e);
    const auto ten = select_modcod(10.0, table, 0.0);
    REQUIRE(ten);
    CHECK(ten->esn0_threshold_db <= 10.0);
    CHECK(*ten == *scan_oracle(10.0, table, 0.0));
    CHECK(!select_modcod(table.front().esn0_threshold_db - 1e-9, table, 0.0));
    CHECK_THROWS_AS(select_modcod(5.0, std::span<const ModCodEntry>{}, 0.0), ConfigError);

    const std::vector<ModCodEntry> ties{{"a", 1.0, 1.0}, {"b", 1.0, 2.0}, {"c", 0.5, 3.0}};
    CHECK(select_modcod(5.0, ties, 0.0)->name == "a");
}

TEST_CASE("MODCOD table validation") {
    CHECK_THROWS_AS(ModCodTable({{"a", 1.0, 2.0}, {"b", 2.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(ModCodTable({{"a", 2.0, 1.0}, {"b", 1.0, 2.0}}), ValidationError);
    CHECK_THROWS_AS(ModCodTable({{"a", 0.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(ModCodTable::parse("name,spectral_efficiency\nx,1\n", "t.csv"), ParseError);
    const auto t = ModCodTable::parse("name,spectral_efficiency,esn0_threshold_db\nx,1.5,3\ny,2,5\n", "t.csv");
    CHECK(t.entries().size() == 2);
}

TEST_CASE("data rate is a step function of Es/N0") {
    const auto& table = bundled();
    const LinkEndpointParams p{0, 0, 20e9, 100e6, 0.0};
    CHECK(data_rate({"x", 2.0, 5.0}, 100e6, 0.0) == 200e6);
    for (double margin : {0.0, 1.5}) {
        double prev = -1.0;
        for (double esn0 = -6.0; esn0 <= 25.0; esn0 += 0.01) {
            const double r = achievable_rate(esn0, table, margin, p);
            CHECK(r >= prev);
            prev = r;
        }
    }
    // Each threshold is a jump.
    for (const auto& e : table.entries()) {
        const double x = e.esn0_threshold_db;
        CHECK(achievable_rate(x, table, 0.0, p) == data_rate(e, p.bandwidth_hz, p.rolloff));
        CHECK(achievable_rate(std::nextafter(x, -1e9), table, 0.0, p) < achievable_rate(x, table, 0.0, p));
    }
    CHECK(achievable_rate(-10.0, table, 0.0, p) == 0.0);
}

TEST_CASE("serving satellite selection") {
    const EciState mission{{kEarthRadiusKm + 700, 0, 0}, {}, Epoch{0}};
    auto sample = [](SatId id, double x, double y) {
        return ProviderSample{id, EciState{{x, y, 0}, {}, Epoch{0}}, 0.3};
    };
    const double r = kEarthRadiusKm + 700;
    std::vector<ProviderSample> ps{sample(4, r + 9000, 0), sample(2, r + 8000, 0)};
    CHECK(serving_satellite(ps, mission, VisibilityMode::LosOnly) == SatId{2});
    ps = {sample(5, r + 8000, 0)};
    CHECK(serving_satellite(ps, mission, VisibilityMode::LosOnly) == SatId{5});
    ps = {sample(1, -(r + 8000), 0)};
    CHECK(!serving_satellite(ps, mission, VisibilityMode::LosOnly));
    ps = {sample(9, r + 3000, 4000), sample(3, r + 3000, -4000)};
    CHECK(serving_satellite(ps, mission, VisibilityMode::LosOnly) == SatId{3});
    ps = {ProviderSample{1, EciState{{r + 8000, 0, 0}, {}, Epoch{1}}, 0.3}};
    CHECK_THROWS_AS(serving_satellite(ps, mission, VisibilityMode::LosOnly), DomainError);
}

TEST_CASE("O3b / Aqua link series stays within geometric bounds") {
    const auto& terminals = testing::catalog().terminals;
    const auto ka100 = *terminals.find_payload("ThinPack Ka100");
    const auto nanosat = *terminals.find_payload("NanoSat");
    const auto big = link_time_series(o3b_aqua(ka100));
    const auto small = link_time_series(o3b_aqua(nanosat));
    REQUIRE(big.size() == 1441);
    REQUIRE(small.size() == big.size());
    const double upper = max_los_range(8062.0, 700.0);
    const auto& modcods = bundled();
    const auto sc = o3b_aqua(ka100);
    for (std::size_t i = 0; i < big.size(); ++i) {
        REQUIRE(big[i].serving_sat);
        CHECK(big[i].t.t_s == 60.0 * static_cast<double>(i));
        CHECK(big[i].slant_range_km >= 8062.0 - 700.0 - 1e-6);
        CHECK(big[i].slant_range_km <= upper);
        CHECK(small[i].serving_sat == big[i].serving_sat);
        CHECK(small[i].esn0_ul_db < big[i].esn0_ul_db);
        CHECK(big[i].esn0_dl_db == doctest::Approx(es_n0(sc.downlink, big[i].slant_range_km)));
        CHECK(big[i].rate_ul_bps == achievable_rate(big[i].esn0_ul_db, modcods, 0.0, sc.uplink));
        CHECK(big[i].rate_dl_bps == achievable_rate(big[i].esn0_dl_db, modcods, 0.0, sc.downlink));
    }
}

TEST_CASE("implementation loss and margins push rates to zero") {
    auto sc = o3b_aqua(*testing::catalog().terminals.find_payload("Ka100"));
    sc.horizon.end = Epoch{3600.0};
    const auto base = link_time_series(sc);
    sc.implementation_loss_db = 2.0;
    const auto lossy = link_time_series(sc);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(lossy[i].esn0_ul_db == doctest::Approx(base[i].esn0_ul_db - 2.0));
        CHECK(lossy[i].rate_ul_bps <= base[i].rate_ul_bps);
    }
    sc.implementation_loss_db = 0.0;
    sc.margin_db = 40.0;
    for (const auto& s : link_time_series(sc)) {
        CHECK(s.rate_ul_bps == 0.0);
        CHECK(s.rate_dl_bps == 0.0);
    }
    sc.step_s = 0.0;
    CHECK_THROWS_AS(link_time_series(sc), ValidationError);
    sc.step_s = 10.0;
    sc.modcods = ModCodTable({});
    CHECK_THROWS_AS(link_time_series(sc), ConfigError);
}

TEST_CASE("endpoint validation") {
    CHECK_THROWS_AS(validate(LinkEndpointParams{1, 1, 0, 1, 0}), ValidationError);
    CHECK_THROWS_AS(validate(LinkEndpointParams{1, 1, 1, -1, 0}), ValidationError);
    CHECK_THROWS_AS(validate(LinkEndpointParams{1, 1, 1, 1, -0.1}), ValidationError);
    CHECK_NOTHROW(validate(LinkEndpointParams{1, 1, 1, 1, 0}));
}
