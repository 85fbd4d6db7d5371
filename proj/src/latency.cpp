#include "sipsim/latency.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

double latency_reduction_ms(double h_mission_km) {
    if (!(h_mission_km > 0.0) || !std::isfinite(h_mission_km)) {
        throw DomainError(fmt::format("mission altitude {} km must be positive", h_mission_km));
    }
    return 4.0 * h_mission_km / constants::kSpeedOfLightKmS * 1000.0;
}

double mission_latency(double baseline_ms, double h_mission_km) {
    if (!(baseline_ms > 0.0) || !std::isfinite(baseline_ms)) {
        throw DomainError(fmt::format("baseline latency {} ms must be positive", baseline_ms));
    }
    const double latency = baseline_ms - latency_reduction_ms(h_mission_km);
    if (!(latency > 0.0)) {
        throw ComputeError(fmt::format("latency model out of range: {} ms baseline at {} km gives {:.3f} ms",
                                       baseline_ms, h_mission_km, latency));
    }
    return latency;
}

LatencyResult latency_result(double baseline_ms, double h_mission_km) {
    LatencyResult r;
    r.baseline_ms = baseline_ms;
    r.mission_altitude_km = h_mission_km;
    r.latency_ms = mission_latency(baseline_ms, h_mission_km);
    r.reduction_ms = latency_reduction_ms(h_mission_km);
    return r;
}

int score_mission(const std::array<int, 3>& scores) {
    int sum = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] < 1 || scores[i] > 3) {
            throw ValidationError(fmt::format("scores[{}]", i), fmt::format("{} outside 1..3", scores[i]));
        }
        sum += scores[i];
    }
    return sum;
}

}  // namespace sipsim
