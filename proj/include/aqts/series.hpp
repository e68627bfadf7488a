#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace aqts {

// Per-sample quality flags; a sample may carry several.
enum SampleFlag : std::uint8_t {
    kMeasured = 1u << 0,
    kInterpolated = 1u << 1,
    kNegativeClampedCandidate = 1u << 2,
};

enum class Unit { kAdc, kPpm };

// Fixed-rate sample grid: sample k lives at start_t + k / rate_hz.
struct UniformSeries {
    double start_t = 0.0;
    double rate_hz = 1.0;
    std::vector<double> values;
    std::vector<std::uint8_t> flags;  // empty means all-measured
    Unit unit = Unit::kPpm;

    std::size_t size() const { return values.size(); }
    double time_at(std::size_t k) const { return start_t + static_cast<double>(k) / rate_hz; }
    std::uint8_t flag_at(std::size_t k) const {
        return flags.empty() ? static_cast<std::uint8_t>(kMeasured) : flags[k];
    }
};

// Timestamped sample prior to grid regularization.
struct TimedValue {
    double t = 0.0;
    double value = 0.0;
    std::uint8_t flags = kMeasured;
};

}  // namespace aqts
