#include "sipsim/visibility.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

std::string_view to_string(VisibilityMode mode) {
    return mode == VisibilityMode::Cone ? "cone" : "los-only";
}

VisibilityMode parse_visibility_mode(std::string_view text) {
    if (text == "cone") return VisibilityMode::Cone;
    if (text == "los-only") return VisibilityMode::LosOnly;
    throw ValidationError("visibility_mode", fmt::format("'{}' is not one of cone, los-only", text));
}

void validate(const VisibilityConfig& cfg) {
    if (!std::isfinite(cfg.coarse_step_s) || cfg.coarse_step_s <= 0.0) {
        throw ValidationError("coarse_step_s", "must be positive");
    }
    if (!std::isfinite(cfg.refine_tolerance_s) || cfg.refine_tolerance_s <= 0.0 ||
        cfg.refine_tolerance_s >= cfg.coarse_step_s) {
        throw ValidationError("refine_tolerance_s", "must lie in (0, coarse_step_s)");
    }
    if (!std::isfinite(cfg.min_elevation_deg) || cfg.min_elevation_deg < 0.0 || cfg.min_elevation_deg > 90.0) {
        throw ValidationError("min_elevation", "must lie in [0, 90]");
    }
}

double cone_half_angle(double h_sip_km, double min_elevation_deg) {
    if (!(h_sip_km > 0.0) || !std::isfinite(h_sip_km)) {
        throw DomainError(fmt::format("provider altitude {} km must be positive", h_sip_km));
    }
    if (!(min_elevation_deg >= 0.0 && min_elevation_deg <= 90.0)) {
        throw DomainError(fmt::format("minimum elevation {} deg outside [0, 90]", min_elevation_deg));
    }
    const double ratio = kEarthRadiusKm / (kEarthRadiusKm + h_sip_km);
    // cos(90 deg) is not exactly zero in floating point.
    if (min_elevation_deg == 90.0) return 0.0;
    return std::asin(ratio * std::cos(min_elevation_deg * kDegToRad));
}

bool los_clear(const Vec3& p1, const Vec3& p2) {
    const Vec3 d = p2 - p1;
    const double dd = d.squared_norm();
    if (dd == 0.0) return p1.squared_norm() > kEarthRadiusKm * kEarthRadiusKm;
    const double s = -dot(p1, d) / dd;
    if (s <= 0.0 || s >= 1.0) return true;
    const Vec3 closest = p1 + d * s;
    return closest.squared_norm() > kEarthRadiusKm * kEarthRadiusKm;
}

bool is_visible(const Vec3& sip, const Vec3& mission, VisibilityMode mode, double cos_alpha) {
    const double sip_r2 = sip.squared_norm();
    if (!(mission.squared_norm() < sip_r2)) return false;
    if (mode == VisibilityMode::Cone) {
        // Angle between the nadir direction -sip and mission - sip must not exceed alpha.
        const Vec3 d = mission - sip;
        const double g = -dot(sip, d);
        if (g <= 0.0) return false;
        if (g * g < cos_alpha * cos_alpha * sip_r2 * d.squared_norm()) return false;
    }
    return los_clear(sip, mission);
}

bool is_visible(const EciState& sip, const EciState& mission, const VisibilityConfig& cfg, double alpha) {
    if (sip.t != mission.t) {
        throw DomainError(fmt::format("visibility states at different epochs ({} s vs {} s)", sip.t.t_s,
                                      mission.t.t_s));
    }
    return is_visible(sip.position_km, mission.position_km, cfg.mode, std::cos(alpha));
}

double visibility_gate_angle(double r_sip_km, double r_mission_km, VisibilityMode mode, double alpha) {
    const double re = kEarthRadiusKm;
    const double los = std::acos(std::min(1.0, re / r_sip_km)) + std::acos(std::min(1.0, re / r_mission_km));
    if (mode == VisibilityMode::LosOnly || r_mission_km >= r_sip_km) return los;
    // Nadir angle seen from the provider rises to asin(r/R) and falls again, so
    // the cone admits a near-side cap and possibly a far-side band.
    const double s = r_sip_km * std::sin(alpha) / r_mission_km;
    if (s >= 1.0) return los;
    const double far_edge = kPi - std::asin(s) - alpha;
    if (far_edge <= los) return los;
    return std::min(los, std::asin(s) - alpha);
}

}  // namespace sipsim
