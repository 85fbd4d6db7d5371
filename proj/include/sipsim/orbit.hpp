#pragma once

#include <compare>

#include "sipsim/vec3.hpp"

namespace sipsim {

// Continuous scenario time in seconds, offset from an arbitrary scenario epoch.
struct Epoch {
    double t_s = 0.0;

    constexpr auto operator<=>(const Epoch&) const = default;
};

// Keplerian elements. Lengths in km, angles in radians.
struct OrbitElements {
    double a_km = 0.0;
    double e = 0.0;
    double inclination = 0.0;
    double raan = 0.0;
    double argp = 0.0;
    double mean_anomaly = 0.0;
    Epoch epoch{};

    bool operator==(const OrbitElements&) const = default;
};

struct EciState {
    Vec3 position_km;
    Vec3 velocity_km_s;
    Epoch t;
};

// sqrt(mu / a^3) in rad/s. Throws DomainError for a < Re or non-finite a.
double mean_motion(double a_km);

double orbital_period(double a_km);

// Inclination (deg) of the circular sun-synchronous orbit at `altitude_km`.
// Throws DomainError outside (0, 6000) km or when no inclination satisfies
// the nodal-rate condition.
double sso_inclination(double altitude_km);

// Secular J2 rates (rad/s) for the node and the argument of perigee.
struct J2Rates {
    double raan_dot = 0.0;
    double argp_dot = 0.0;
};
J2Rates j2_secular_rates(const OrbitElements& el);

double wrap_two_pi(double angle);

// Throws DomainError when the elements violate their invariants.
void validate(const OrbitElements& el);

// Precomputes everything about an orbit that does not depend on time so that
// repeated position queries (the coverage scan) stay cheap. propagate() is a
// thin wrapper, so both paths produce bit-identical results.
class Propagator {
public:
    Propagator(const OrbitElements& el, bool j2);

    EciState state(Epoch t) const;
    Vec3 position(Epoch t) const;

    const OrbitElements& elements() const noexcept { return elements_; }
    double radius_bound_km() const noexcept { return apoapsis_km_; }

private:
    double eccentric_anomaly(double mean_anomaly) const;

    OrbitElements elements_;
    double n_ = 0.0;
    double raan_dot_ = 0.0;
    double argp_dot_ = 0.0;
    double cos_i_ = 1.0;
    double sin_i_ = 0.0;
    double semi_minor_km_ = 0.0;
    double apoapsis_km_ = 0.0;
    bool circular_ = true;
};

EciState propagate(const OrbitElements& el, Epoch t, bool j2 = true);

}  // namespace sipsim
