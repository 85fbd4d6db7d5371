#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

#include "sipsim/catalog.hpp"
#include "sipsim/constants.hpp"
#include "sipsim/orbit.hpp"

namespace testing {

inline const sipsim::DataCatalog& catalog() {
    static const sipsim::DataCatalog c = sipsim::DataCatalog::load(SIPSIM_DEFAULT_DATA_DIR);
    return c;
}

inline std::filesystem::path source_dir() { return SIPSIM_SOURCE_DIR; }

// Fixed seeds keep property tests reproducible run to run.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    sipsim::OrbitElements circular(double alt_lo, double alt_hi) {
        using namespace sipsim::constants;
        sipsim::OrbitElements el;
        el.a_km = kEarthRadiusKm + uniform(alt_lo, alt_hi);
        el.inclination = uniform(0.0, kPi);
        el.raan = uniform(0.0, kTwoPi);
        el.mean_anomaly = uniform(0.0, kTwoPi);
        return el;
    }

    sipsim::OrbitElements elliptical() {
        using namespace sipsim::constants;
        sipsim::OrbitElements el = circular(300.0, 30000.0);
        el.e = uniform(0.0, 0.8);
        // Keep perigee above the surface.
        const double min_a = (kEarthRadiusKm + 100.0) / (1.0 - el.e);
        if (el.a_km < min_a) el.a_km = min_a;
        el.argp = uniform(0.0, kTwoPi);
        return el;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing
