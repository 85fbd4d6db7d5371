#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"
#include "sipsim/visibility.hpp"
#include "support.hpp"

using namespace sipsim;
using namespace sipsim::constants;

namespace {

Vec3 random_point(testing::Gen& gen, double r_lo, double r_hi) {
    const double z = gen.uniform(-1.0, 1.0);
    const double phi = gen.uniform(0.0, kTwoPi);
    const double r = gen.uniform(r_lo, r_hi);
    const double s = std::sqrt(1 - z * z);
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * z};
}

// Sampled distance from the origin to a segment.
double segment_clearance(const Vec3& a, const Vec3& b) {
    double best = a.norm();
    for (int i = 0; i <= 20000; ++i) best = std::min(best, (a + (b - a) * (i / 20000.0)).norm());
    return best;
}

double nadir_angle(const Vec3& sip, const Vec3& mission) {
    const Vec3 d = mission - sip;
    return std::acos(std::clamp(dot(sip * -1.0, d) / (sip.norm() * d.norm()), -1.0, 1.0));
}

}  // namespace

TEST_CASE("cone half-angle meets the ground at the minimum elevation") {
    for (double h : {550.0, 1200.0, 8062.0}) {
        for (double eps : {0.0, 5.0, 25.0, 60.0}) {
            const double alpha = cone_half_angle(h, eps);
            // Law of sines in the Earth-centre / provider / ground triangle.
            const double cos_elev = (kEarthRadiusKm + h) / kEarthRadiusKm * std::sin(alpha);
            CHECK(cos_elev == doctest::Approx(std::cos(eps * kDegToRad)).epsilon(1e-12));
        }
    }
    CHECK(cone_half_angle(1000.0, 90.0) == 0.0);
    CHECK(cone_half_angle(8062.0, 0.0) == doctest::Approx(std::asin(kEarthRadiusKm / (kEarthRadiusKm + 8062.0))));
    CHECK_THROWS_AS(cone_half_angle(-5.0, 10.0), DomainError);
    CHECK_THROWS_AS(cone_half_angle(500.0, 91.0), DomainError);
}

TEST_CASE("line of sight against a sampled clearance oracle") {
    testing::Gen gen(31);
    int checked = 0;
    for (int k = 0; k < 3000; ++k) {
        const Vec3 a = random_point(gen, kEarthRadiusKm + 100, kEarthRadiusKm + 20000);
        const Vec3 b = random_point(gen, kEarthRadiusKm + 100, kEarthRadiusKm + 20000);
        const double clearance = segment_clearance(a, b);
        if (std::abs(clearance - kEarthRadiusKm) < 2.0) continue;  // sampling resolution
        CHECK(los_clear(a, b) == (clearance > kEarthRadiusKm));
        CHECK(los_clear(a, b) == los_clear(b, a));
        ++checked;
    }
    CHECK(checked > 2500);
    const Vec3 p{kEarthRadiusKm + 500, 0, 0};
    CHECK(!los_clear(p, p * -1.0));
    CHECK(los_clear(p, p * 2.0));
}

TEST_CASE("cone predicate against an explicit-angle oracle") {
    testing::Gen gen(32);
    for (int k = 0; k < 5000; ++k) {
        const double h_sip = gen.uniform(500.0, 9000.0);
        const double alpha = cone_half_angle(h_sip, gen.uniform(0.0, 40.0));
        const Vec3 sip = random_point(gen, kEarthRadiusKm + h_sip, kEarthRadiusKm + h_sip);
        const Vec3 mission = random_point(gen, kEarthRadiusKm + 200, kEarthRadiusKm + 9000);
        const double beta = nadir_angle(sip, mission);
        if (std::abs(beta - alpha) < 1e-9) continue;
        const bool lower = mission.norm() < sip.norm();
        const bool expected_cone = lower && beta <= alpha && los_clear(sip, mission);
        const bool expected_los = lower && los_clear(sip, mission);
        CHECK(is_visible(sip, mission, VisibilityMode::Cone, std::cos(alpha)) == expected_cone);
        CHECK(is_visible(sip, mission, VisibilityMode::LosOnly, std::cos(alpha)) == expected_los);
    }
}

TEST_CASE("gate angle bounds every visible geometry") {
    testing::Gen gen(33);
    for (int k = 0; k < 20000; ++k) {
        const double h_sip = gen.uniform(500.0, 9000.0);
        const auto mode = gen.coin() ? VisibilityMode::Cone : VisibilityMode::LosOnly;
        const double alpha = cone_half_angle(h_sip, gen.uniform(0.0, 40.0));
        const Vec3 sip = random_point(gen, kEarthRadiusKm + h_sip, kEarthRadiusKm + h_sip);
        const Vec3 mission = random_point(gen, kEarthRadiusKm + 200, kEarthRadiusKm + h_sip);
        const double theta = std::acos(std::clamp(dot(sip, mission) / (sip.norm() * mission.norm()), -1.0, 1.0));
        const double gate = visibility_gate_angle(sip.norm(), mission.norm(), mode, alpha);
        if (theta > gate + 1e-12) CHECK(!is_visible(sip, mission, mode, std::cos(alpha)));
    }
}

TEST_CASE("higher mission never sees the provider") {
    const Vec3 sip{kEarthRadiusKm + 500, 0, 0};
    const Vec3 above{kEarthRadiusKm + 800, 10, 0};
    CHECK(!is_visible(sip, above, VisibilityMode::LosOnly, 0.0));
    CHECK(!is_visible(sip, sip, VisibilityMode::LosOnly, 0.0));
}

TEST_CASE("state form checks epochs") {
    VisibilityConfig cfg;
    EciState a{{kEarthRadiusKm + 8000, 0, 0}, {}, Epoch{0.0}};
    EciState b{{kEarthRadiusKm + 700, 0, 0}, {}, Epoch{0.0}};
    CHECK(is_visible(a, b, cfg, cone_half_angle(8000, 5)));
    b.t = Epoch{1.0};
    CHECK_THROWS_AS(is_visible(a, b, cfg, 0.1), DomainError);
}

TEST_CASE("mode names and config validation") {
    CHECK(parse_visibility_mode("cone") == VisibilityMode::Cone);
    CHECK(parse_visibility_mode(to_string(VisibilityMode::LosOnly)) == VisibilityMode::LosOnly);
    CHECK_THROWS_AS(parse_visibility_mode("los"), ValidationError);
    VisibilityConfig cfg;
    cfg.refine_tolerance_s = 20.0;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
    cfg.refine_tolerance_s = 0.01;
    cfg.coarse_step_s = 0.0;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
}
