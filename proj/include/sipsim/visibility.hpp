#pragma once

#include <string>
#include <string_view>

#include "sipsim/orbit.hpp"
#include "sipsim/vec3.hpp"

namespace sipsim {

enum class VisibilityMode {
    Cone,     // inside the provider's nadir service cone, lower orbit, clear line of sight
    LosOnly,  // lower orbit and clear line of sight
};

std::string_view to_string(VisibilityMode mode);
VisibilityMode parse_visibility_mode(std::string_view text);

struct VisibilityConfig {
    VisibilityMode mode = VisibilityMode::Cone;
    double min_elevation_deg = 0.0;
    double coarse_step_s = 10.0;
    double refine_tolerance_s = 0.01;
    bool j2 = true;
};

void validate(const VisibilityConfig& cfg);

// Half-angle (rad) of the nadir cone that reaches the ground at the
// provider's minimum service elevation.
double cone_half_angle(double h_sip_km, double min_elevation_deg);

// True when the segment p1 -> p2 stays outside the Earth sphere.
bool los_clear(const Vec3& p1, const Vec3& p2);

// Position-only predicate used by the scan; cos_alpha = cos(cone half-angle).
bool is_visible(const Vec3& sip, const Vec3& mission, VisibilityMode mode, double cos_alpha);

// Throws DomainError when the states are not at the same epoch.
bool is_visible(const EciState& sip, const EciState& mission, const VisibilityConfig& cfg, double alpha);

// Largest Earth-central angle (rad) between a provider at radius r_sip_km and
// a mission at radius r_mission_km for which is_visible can hold.
double visibility_gate_angle(double r_sip_km, double r_mission_km, VisibilityMode mode, double alpha);

}  // namespace sipsim
