#include "sipsim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "sipsim/constants.hpp"
#include "sipsim/error.hpp"

namespace sipsim {

using namespace constants;

namespace {

void validate(const Horizon& horizon) {
    if (!std::isfinite(horizon.start.t_s) || !std::isfinite(horizon.end.t_s) || !(horizon.end > horizon.start)) {
        throw ValidationError("horizon_s", "horizon end must be after its start");
    }
}

// Coarse sample k of the horizon; the last sample sits exactly on the end.
struct Grid {
    Horizon horizon;
    double step = 0.0;
    long last = 0;

    Grid(const Horizon& h, double coarse_step) : horizon(h), step(coarse_step) {
        last = static_cast<long>(std::ceil(h.length() / coarse_step - 1e-12));
        if (last < 1) last = 1;
    }

    Epoch at(long k) const {
        if (k >= last) return horizon.end;
        return Epoch{horizon.start.t_s + static_cast<double>(k) * step};
    }
};

// Upper bound on how fast the direction of the position vector turns, rad/s.
double angular_rate_bound(const OrbitElements& el, bool j2) {
    const double n = mean_motion(el.a_km);
    const double e = el.e;
    double rate = n * (1.0 + e) * (1.0 + e) / std::pow(1.0 - e * e, 1.5);
    if (j2) {
        const auto rates = j2_secular_rates(el);
        rate += std::abs(rates.raan_dot) + std::abs(rates.argp_dot);
    }
    return rate * 1.01;
}

struct MissionTrack {
    Propagator propagator;
    std::vector<Vec3> grid_positions;
    double rate = 0.0;
    bool circular = true;

    MissionTrack(const OrbitElements& el, const Grid& grid, bool j2) : propagator(el, j2) {
        rate = angular_rate_bound(el, j2);
        circular = el.e == 0.0;
        grid_positions.reserve(static_cast<std::size_t>(grid.last + 1));
        for (long k = 0; k <= grid.last; ++k) grid_positions.push_back(propagator.position(grid.at(k)));
    }
};

std::vector<AccessInterval> extract(const Propagator& provider, const MissionTrack& mission, const Grid& grid,
                                    const VisibilityConfig& cfg, double alpha, SatId sat_id) {
    const double cos_alpha = std::cos(alpha);
    const OrbitElements& pel = provider.elements();
    const bool can_skip = mission.circular && pel.e == 0.0;
    double gate = kPi;
    double closing_rate = 1.0;
    if (can_skip) {
        gate = visibility_gate_angle(pel.a_km, mission.propagator.elements().a_km, cfg.mode, alpha) + 1e-6;
        closing_rate = angular_rate_bound(pel, cfg.j2) + mission.rate;
    }

    auto visible_at = [&](Epoch t) {
        return is_visible(provider.position(t), mission.propagator.position(t), cfg.mode, cos_alpha);
    };
    auto refine = [&](double lo, double hi, bool lo_state) {
        while (hi - lo > cfg.refine_tolerance_s) {
            const double mid = 0.5 * (lo + hi);
            if (visible_at(Epoch{mid}) == lo_state) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    std::vector<AccessInterval> out;
    bool prev = false;
    double open_at = 0.0;
    long k = 0;
    while (k <= grid.last) {
        const Vec3 sip = provider.position(grid.at(k));
        const Vec3& own = mission.grid_positions[static_cast<std::size_t>(k)];
        const bool vis = is_visible(sip, own, cfg.mode, cos_alpha);
        if (k == 0) {
            if (vis) open_at = grid.horizon.start.t_s;
        } else if (vis != prev) {
            // Skipped samples are provably invisible, so the change lies in the last cell.
            const double boundary = refine(grid.at(k - 1).t_s, grid.at(k).t_s, prev);
            if (vis) {
                open_at = boundary;
            } else {
                out.push_back({sat_id, Epoch{open_at}, Epoch{boundary}});
            }
        }
        prev = vis;

        long advance = 1;
        if (!vis && can_skip) {
            const double c = dot(sip, own) / std::sqrt(sip.squared_norm() * own.squared_norm());
            const double theta = std::acos(std::clamp(c, -1.0, 1.0));
            if (theta > gate) {
                const double quiet_s = (theta - gate) / closing_rate;
                advance = std::max(1L, static_cast<long>(std::ceil(quiet_s / grid.step)));
                if (k < grid.last && k + advance > grid.last) advance = grid.last - k;
            }
        }
        k += advance;
    }
    if (prev) out.push_back({sat_id, Epoch{open_at}, grid.horizon.end});
    return out;
}

}  // namespace

std::vector<AccessInterval> access_intervals(const OrbitElements& provider, const OrbitElements& mission,
                                             const Horizon& horizon, const VisibilityConfig& cfg, double alpha,
                                             SatId sat_id) {
    validate(horizon);
    validate(cfg);
    const Grid grid(horizon, cfg.coarse_step_s);
    const MissionTrack track(mission, grid, cfg.j2);
    return extract(Propagator(provider, cfg.j2), track, grid, cfg, alpha, sat_id);
}

PerSatelliteIntervals scan_constellation(const std::vector<Satellite>& satellites, const OrbitElements& mission,
                                         const Horizon& horizon, const VisibilityConfig& cfg, int threads) {
    validate(horizon);
    validate(cfg);
    const Grid grid(horizon, cfg.coarse_step_s);
    const MissionTrack track(mission, grid, cfg.j2);

    std::vector<std::vector<AccessInterval>> results(satellites.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Satellite& sat = satellites[i];
            const double alpha = cone_half_angle(sat.elements.a_km - kEarthRadiusKm, cfg.min_elevation_deg);
            results[i] = extract(Propagator(sat.elements, cfg.j2), track, grid, cfg, alpha, sat.id);
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(1, satellites.size()));
    if (workers == 1) {
        work(0, satellites.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (satellites.size() + workers - 1) / workers;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(satellites.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    PerSatelliteIntervals out;
    for (std::size_t i = 0; i < satellites.size(); ++i) out.emplace(satellites[i].id, std::move(results[i]));
    return out;
}

UnionResult union_and_outages(const PerSatelliteIntervals& per_sat, const Horizon& horizon) {
    validate(horizon);
    std::vector<TimeInterval> all;
    for (const auto& [id, intervals] : per_sat) {
        for (const auto& iv : intervals) {
            const double s = std::max(iv.start.t_s, horizon.start.t_s);
            const double e = std::min(iv.end.t_s, horizon.end.t_s);
            if (e > s) all.push_back({Epoch{s}, Epoch{e}});
        }
    }
    std::sort(all.begin(), all.end(), [](const TimeInterval& a, const TimeInterval& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    });

    UnionResult out;
    for (const auto& iv : all) {
        if (!out.coverage.empty() && iv.start <= out.coverage.back().end) {
            out.coverage.back().end = std::max(out.coverage.back().end, iv.end);
        } else {
            out.coverage.push_back(iv);
        }
    }

    Epoch cursor = horizon.start;
    for (const auto& iv : out.coverage) {
        if (iv.start > cursor) out.outages.push_back({cursor, iv.start});
        cursor = iv.end;
    }
    if (cursor < horizon.end) out.outages.push_back({cursor, horizon.end});
    return out;
}

CoverageReport coverage_stats(const UnionResult& merged, const PerSatelliteIntervals& per_sat,
                              const Horizon& horizon) {
    validate(horizon);
    CoverageReport report;
    report.horizon = horizon;
    report.coverage = merged.coverage;
    report.outages = merged.outages;
    for (const auto& iv : merged.coverage) {
        const double d = iv.duration();
        report.total_access_s += d;
        report.min_uninterrupted_s = report.min_uninterrupted_s ? std::min(*report.min_uninterrupted_s, d) : d;
        report.max_uninterrupted_s = report.max_uninterrupted_s ? std::max(*report.max_uninterrupted_s, d) : d;
    }
    report.total_pct = 100.0 * report.total_access_s / horizon.length();
    for (const auto& [id, intervals] : per_sat) {
        auto& durations = report.per_sat_durations[id];
        for (const auto& iv : intervals) durations.push_back(iv.duration());
    }
    return report;
}

EcdfResult per_satellite_ecdf(const std::map<SatId, std::vector<double>>& per_sat_durations, double threshold_s) {
    if (per_sat_durations.empty()) throw DomainError("eCDF needs at least one satellite");
    if (!std::isfinite(threshold_s) || threshold_s < 0.0) throw DomainError("eCDF threshold must be non-negative");

    EcdfResult out;
    out.threshold_s = threshold_s;
    std::vector<double> maxima;
    for (const auto& [id, durations] : per_sat_durations) {
        if (durations.empty()) {
            ++out.zero_access_satellites;
            continue;
        }
        double longest = 0.0;
        for (double d : durations) {
            if (!(d >= 0.0)) throw DomainError(fmt::format("satellite {} has a negative access duration", id));
            longest = std::max(longest, d);
        }
        maxima.push_back(longest);
    }
    if (maxima.empty()) throw ComputeError("no satellite had any access over the horizon");

    std::sort(maxima.begin(), maxima.end());
    out.counted_satellites = static_cast<int>(maxima.size());
    const double n = static_cast<double>(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        // Collapse ties onto the last (highest) step.
        if (i + 1 < maxima.size() && maxima[i + 1] == maxima[i]) continue;
        out.points.push_back({maxima[i], static_cast<double>(i + 1) / n});
    }
    out.useless_count =
        static_cast<int>(std::lower_bound(maxima.begin(), maxima.end(), threshold_s) - maxima.begin());
    out.useless_fraction = out.useless_count / n;
    return out;
}

}  // namespace sipsim
