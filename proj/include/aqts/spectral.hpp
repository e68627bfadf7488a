#pragma once

#include <optional>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

enum class WindowFn { kRect, kHann };

// Variance-normalized periodogram: positive-frequency bins only (no DC), and
// under the rect window the powers sum exactly to the population variance of
// the mean-removed input.
struct Spectrum {
    std::vector<double> freqs;  // Hz, strictly increasing, k = 1..n/2
    std::vector<double> power;
    WindowFn window_fn = WindowFn::kRect;
};

struct DominantPeak {
    double freq = 0.0;              // Hz
    double period = 0.0;            // s, 1/freq
    double prominence_ratio = 0.0;  // peak power / median power of searched band
};

struct TrackPoint {
    double window_start_t = 0.0;
    std::optional<DominantPeak> peak;
};

struct PowerLawFit {
    double slope = 0.0;      // d log10(power) / d log10(freq)
    double intercept = 0.0;  // log10(power) at log10(freq) = 0
};

Spectrum periodogram(const UniformSeries& series, WindowFn window_fn = WindowFn::kRect);

// OLS of log10(power) on log10(freq) over bins inside [f_lo, f_hi].
PowerLawFit fit_one_over_f(const Spectrum& spec, double f_lo, double f_hi);

// Highest-power bin at freq >= f_min, emitted only when it stands at least
// min_prominence above the median power of the searched band. Absence is a
// value, not an error.
std::optional<DominantPeak> dominant_frequency(const Spectrum& spec, double f_min,
                                               double min_prominence);

// Sliding-window dominant-frequency track (Hann-tapered periodogram per
// window), one record per window in time order.
std::vector<TrackPoint> dominant_track(const UniformSeries& series, int window_s, int step_s,
                                       double f_min, double min_prominence);

}  // namespace aqts
