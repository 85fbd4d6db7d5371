#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sipsim/constants.hpp"
#include "sipsim/constellation.hpp"
#include "sipsim/orbit.hpp"
#include "sipsim/visibility.hpp"

namespace sipsim {

struct Horizon {
    Epoch start{};
    Epoch end{constants::kSecondsPerDay};

    double length() const noexcept { return end.t_s - start.t_s; }
    bool operator==(const Horizon&) const = default;
};

struct TimeInterval {
    Epoch start;
    Epoch end;

    double duration() const noexcept { return end.t_s - start.t_s; }
    bool operator==(const TimeInterval&) const = default;
};

struct AccessInterval {
    SatId sat_id = 0;
    Epoch start;
    Epoch end;

    double duration() const noexcept { return end.t_s - start.t_s; }
    bool operator==(const AccessInterval&) const = default;
};

using PerSatelliteIntervals = std::map<SatId, std::vector<AccessInterval>>;

// Coarse scan plus bisection of every predicate change. Intervals come back
// sorted, disjoint and maximal. An access that opens and closes within one
// coarse step can be missed.
std::vector<AccessInterval> access_intervals(const OrbitElements& provider, const OrbitElements& mission,
                                             const Horizon& horizon, const VisibilityConfig& cfg, double alpha,
                                             SatId sat_id = 0);

// Every satellite of a constellation against one mission. The cone angle is
// derived per shell altitude from cfg.min_elevation_deg. Work is split across
// `threads` workers; the result does not depend on the split.
PerSatelliteIntervals scan_constellation(const std::vector<Satellite>& satellites, const OrbitElements& mission,
                                         const Horizon& horizon, const VisibilityConfig& cfg, int threads = 1);

struct UnionResult {
    std::vector<TimeInterval> coverage;
    std::vector<TimeInterval> outages;
};

UnionResult union_and_outages(const PerSatelliteIntervals& per_sat, const Horizon& horizon);

struct CoverageReport {
    Horizon horizon;
    double total_access_s = 0.0;
    double total_pct = 0.0;
    std::optional<double> min_uninterrupted_s;
    std::optional<double> max_uninterrupted_s;
    std::vector<TimeInterval> coverage;
    std::vector<TimeInterval> outages;
    std::map<SatId, std::vector<double>> per_sat_durations;
};

CoverageReport coverage_stats(const UnionResult& merged, const PerSatelliteIntervals& per_sat,
                              const Horizon& horizon);

struct EcdfPoint {
    double duration_s = 0.0;
    double probability = 0.0;
};

struct EcdfResult {
    std::vector<EcdfPoint> points;
    double threshold_s = 0.0;
    double useless_fraction = 0.0;
    int useless_count = 0;
    int counted_satellites = 0;
    int zero_access_satellites = 0;
};

// eCDF of each satellite's longest single access. Satellites without any
// access are left out of the distribution and of the useless-fraction
// denominator.
EcdfResult per_satellite_ecdf(const std::map<SatId, std::vector<double>>& per_sat_durations, double threshold_s);

}  // namespace sipsim
