#pragma once

// Physical constants shared by every module. Spherical Earth model.

namespace sipsim::constants {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

inline constexpr double kEarthRadiusKm = 6378.137;     // equatorial radius
inline constexpr double kEarthMu = 398600.4418;        // km^3/s^2
inline constexpr double kEarthJ2 = 1.08262668e-3;
inline constexpr double kSpeedOfLightKmS = 299792.458;
inline constexpr double kSpeedOfLightMS = 299792458.0;

// Mean-Sun nodal rate a sun-synchronous orbit must match, rad/s.
inline constexpr double kSunSynchronousNodeRate = 1.99096871e-7;

// -10*log10(k) with k in W/(K*Hz).
inline constexpr double kBoltzmannDb = 228.6;

inline constexpr double kSecondsPerDay = 86400.0;

}  // namespace sipsim::constants
