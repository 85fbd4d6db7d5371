#include "sipsim/orbit.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

double mean_motion(double a_km) {
    if (!std::isfinite(a_km) || a_km < kEarthRadiusKm) {
        throw DomainError(fmt::format("semi-major axis {} km is below the Earth radius or not finite", a_km));
    }
    return std::sqrt(kEarthMu / (a_km * a_km * a_km));
}

double orbital_period(double a_km) { return kTwoPi / mean_motion(a_km); }

double sso_inclination(double altitude_km) {
    if (!std::isfinite(altitude_km) || altitude_km <= 0.0 || altitude_km >= 6000.0) {
        throw DomainError(fmt::format("sun-synchronous altitude {} km outside (0, 6000) km", altitude_km));
    }
    const double a = kEarthRadiusKm + altitude_km;
    const double ratio = kEarthRadiusKm / a;
    const double cos_i = -kSunSynchronousNodeRate / (1.5 * kEarthJ2 * mean_motion(a) * ratio * ratio);
    if (std::abs(cos_i) > 1.0) {
        throw DomainError(fmt::format("no sun-synchronous inclination exists at {} km", altitude_km));
    }
    return std::acos(cos_i) * kRadToDeg;
}

J2Rates j2_secular_rates(const OrbitElements& el) {
    const double n = mean_motion(el.a_km);
    const double p = el.a_km * (1.0 - el.e * el.e);
    const double ratio = kEarthRadiusKm / p;
    const double k = kEarthJ2 * n * ratio * ratio;
    const double c = std::cos(el.inclination);
    return {-1.5 * k * c, 0.75 * k * (5.0 * c * c - 1.0)};
}

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

void validate(const OrbitElements& el) {
    mean_motion(el.a_km);
    if (!std::isfinite(el.e) || el.e < 0.0) {
        throw DomainError(fmt::format("eccentricity {} is negative or not finite", el.e));
    }
    if (el.e >= 1.0) {
        throw DomainError(fmt::format("unsupported orbit: eccentricity {} is not elliptic", el.e));
    }
    if (el.a_km * (1.0 - el.e) <= kEarthRadiusKm) {
        throw DomainError("periapsis lies inside the Earth");
    }
    for (double angle : {el.inclination, el.raan, el.argp, el.mean_anomaly, el.epoch.t_s}) {
        if (!std::isfinite(angle)) throw DomainError("orbit element is not finite");
    }
}

Propagator::Propagator(const OrbitElements& el, bool j2) : elements_(el) {
    validate(el);
    n_ = mean_motion(el.a_km);
    if (j2) {
        const auto rates = j2_secular_rates(el);
        raan_dot_ = rates.raan_dot;
        argp_dot_ = rates.argp_dot;
    }
    cos_i_ = std::cos(el.inclination);
    sin_i_ = std::sin(el.inclination);
    circular_ = el.e == 0.0;
    semi_minor_km_ = el.a_km * std::sqrt(1.0 - el.e * el.e);
    apoapsis_km_ = el.a_km * (1.0 + el.e);
}

double Propagator::eccentric_anomaly(double mean_anomaly) const {
    const double e = elements_.e;
    double ecc = e < 0.8 ? mean_anomaly : kPi;
    for (int iter = 0; iter < 50; ++iter) {
        const double f = ecc - e * std::sin(ecc) - mean_anomaly;
        const double step = f / (1.0 - e * std::cos(ecc));
        ecc -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return ecc;
}

EciState Propagator::state(Epoch t) const {
    const double dt = t.t_s - elements_.epoch.t_s;
    const double raan = elements_.raan + raan_dot_ * dt;
    const double argp = elements_.argp + argp_dot_ * dt;
    const double mean_anomaly = wrap_two_pi(elements_.mean_anomaly + n_ * dt);
    const double a = elements_.a_km;
    const double co = std::cos(raan), so = std::sin(raan);

    EciState out;
    out.t = t;
    if (circular_) {
        // Argument of latitude u = argp + M for e = 0.
        const double u = argp + mean_anomaly;
        const double cu = std::cos(u), su = std::sin(u);
        const double v = n_ * a;
        out.position_km = {a * (co * cu - so * su * cos_i_), a * (so * cu + co * su * cos_i_), a * (su * sin_i_)};
        out.velocity_km_s = {v * (-co * su - so * cu * cos_i_), v * (-so * su + co * cu * cos_i_), v * (cu * sin_i_)};
        return out;
    }

    // Perifocal position and velocity.
    const double ecc = eccentric_anomaly(mean_anomaly);
    const double c = std::cos(ecc);
    const double s = std::sin(ecc);
    const double edot = n_ / (1.0 - elements_.e * c);
    const double px = a * (c - elements_.e);
    const double py = semi_minor_km_ * s;
    const double vx = -a * s * edot;
    const double vy = semi_minor_km_ * c * edot;

    // Rz(raan) * Rx(i) * Rz(argp)
    const double cw = std::cos(argp), sw = std::sin(argp);
    const double r11 = co * cw - so * sw * cos_i_;
    const double r12 = -co * sw - so * cw * cos_i_;
    const double r21 = so * cw + co * sw * cos_i_;
    const double r22 = -so * sw + co * cw * cos_i_;
    const double r31 = sw * sin_i_;
    const double r32 = cw * sin_i_;
    out.position_km = {r11 * px + r12 * py, r21 * px + r22 * py, r31 * px + r32 * py};
    out.velocity_km_s = {r11 * vx + r12 * vy, r21 * vx + r22 * vy, r31 * vx + r32 * vy};
    return out;
}

Vec3 Propagator::position(Epoch t) const {
    if (!circular_) return state(t).position_km;
    const double dt = t.t_s - elements_.epoch.t_s;
    const double raan = elements_.raan + raan_dot_ * dt;
    const double u = elements_.argp + argp_dot_ * dt + wrap_two_pi(elements_.mean_anomaly + n_ * dt);
    const double a = elements_.a_km;
    const double co = std::cos(raan), so = std::sin(raan);
    const double cu = std::cos(u), su = std::sin(u);
    return {a * (co * cu - so * su * cos_i_), a * (so * cu + co * su * cos_i_), a * (su * sin_i_)};
}

EciState propagate(const OrbitElements& el, Epoch t, bool j2) { return Propagator(el, j2).state(t); }

}  // namespace sipsim
