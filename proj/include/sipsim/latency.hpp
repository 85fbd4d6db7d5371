#pragma once

#include <array>

namespace sipsim {

struct LatencyResult {
    double baseline_ms = 0.0;
    double mission_altitude_km = 0.0;
    double reduction_ms = 0.0;
    double latency_ms = 0.0;
};

// Round-trip latency seen by a mission flying at h_mission_km: the ground
// user baseline with both user-side legs shortened by the mission altitude.
// ComputeError when the result would not be positive.
double mission_latency(double baseline_ms, double h_mission_km);

double latency_reduction_ms(double h_mission_km);

LatencyResult latency_result(double baseline_ms, double h_mission_km);

// Sum of data-rate, availability and latency benefit scores, each in 1..3.
int score_mission(const std::array<int, 3>& scores);

}  // namespace sipsim
