#include "aqts/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "aqts/detail/fft.hpp"
#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"

namespace aqts {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

Spectrum periodogram(const UniformSeries& series, WindowFn window_fn) {
    const std::size_t n = series.size();
    if (n < 16) {
        throw Error(ErrorCode::kSeriesTooShort, "periodogram needs >= 16 samples");
    }

    const double m = detail::mean(series.values);
    std::vector<std::complex<double>> buf(n);
    double window_power = 0.0;  // (1/n) * sum w_t^2
    for (std::size_t t = 0; t < n; ++t) {
        double w = 1.0;
        if (window_fn == WindowFn::kHann) {
            w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(t) /
                                      static_cast<double>(n - 1)));
        }
        window_power += w * w;
        buf[t] = {(series.values[t] - m) * w, 0.0};
    }
    window_power /= static_cast<double>(n);

    detail::fft(buf);

    const std::size_t n_bins = n / 2;
    Spectrum spec;
    spec.window_fn = window_fn;
    spec.freqs.reserve(n_bins);
    spec.power.reserve(n_bins);
    const double norm = static_cast<double>(n) * static_cast<double>(n) * window_power;
    for (std::size_t k = 1; k <= n_bins; ++k) {
        // one-sided: double everything except the Nyquist bin of an even n
        const double c = (n % 2 == 0 && k == n_bins) ? 1.0 : 2.0;
        spec.freqs.push_back(static_cast<double>(k) * series.rate_hz / static_cast<double>(n));
        spec.power.push_back(c * std::norm(buf[k]) / norm);
    }
    return spec;
}

PowerLawFit fit_one_over_f(const Spectrum& spec, double f_lo, double f_hi) {
    std::size_t in_band = 0;
    std::vector<std::pair<double, double>> pts;  // (log10 f, log10 p)
    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        if (spec.freqs[k] < f_lo || spec.freqs[k] > f_hi) continue;
        ++in_band;
        if (spec.power[k] > 0.0) {
            pts.push_back({std::log10(spec.freqs[k]), std::log10(spec.power[k])});
        }
    }
    if (in_band < 8) {
        throw Error(ErrorCode::kBandTooNarrow,
                    "band holds " + std::to_string(in_band) + " bins, need >= 8");
    }
    if (pts.size() < 8) {
        throw Error(ErrorCode::kZeroPowerInBand,
                    "only " + std::to_string(pts.size()) + " positive-power bins in band");
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto nn = static_cast<double>(pts.size());
    const double denom = nn * sxx - sx * sx;
    PowerLawFit fit;
    fit.slope = (nn * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / nn;
    return fit;
}

std::optional<DominantPeak> dominant_frequency(const Spectrum& spec, double f_min,
                                               double min_prominence) {
    std::vector<double> band_power;
    std::size_t best = spec.freqs.size();
    for (std::size_t k = 0; k < spec.freqs.size(); ++k) {
        if (spec.freqs[k] < f_min) continue;
        band_power.push_back(spec.power[k]);
        if (best == spec.freqs.size() || spec.power[k] > spec.power[best]) best = k;
    }
    if (best == spec.freqs.size() || spec.power[best] <= 0.0) return std::nullopt;

    std::vector<double> sorted = band_power;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double median = sorted[sorted.size() / 2];
    if (sorted.size() % 2 == 0) {
        const double lower = *std::max_element(sorted.begin(), sorted.begin() + sorted.size() / 2);
        median = 0.5 * (median + lower);
    }

    DominantPeak peak;
    peak.freq = spec.freqs[best];
    peak.period = 1.0 / peak.freq;
    peak.prominence_ratio = median > 0.0 ? spec.power[best] / median
                                         : std::numeric_limits<double>::infinity();
    if (peak.prominence_ratio < min_prominence) return std::nullopt;
    return peak;
}

std::vector<TrackPoint> dominant_track(const UniformSeries& series, int window_s, int step_s,
                                       double f_min, double min_prominence) {
    if (step_s < 1) throw Error(ErrorCode::kConfigError, "step_s must be >= 1");
    const auto win = static_cast<std::size_t>(std::llround(window_s * series.rate_hz));
    const auto step = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(step_s * series.rate_hz)));
    if (win < 64) {
        throw Error(ErrorCode::kSeriesTooShort, "window must cover >= 64 samples");
    }
    if (win > series.size()) {
        throw Error(ErrorCode::kWindowTooLarge, "window " + std::to_string(win) +
                                                    " samples vs length " +
                                                    std::to_string(series.size()));
    }

    std::vector<TrackPoint> track;
    for (std::size_t start = 0; start + win <= series.size(); start += step) {
        UniformSeries chunk;
        chunk.start_t = series.time_at(start);
        chunk.rate_hz = series.rate_hz;
        chunk.unit = series.unit;
        chunk.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(start),
                            series.values.begin() + static_cast<std::ptrdiff_t>(start + win));
        TrackPoint pt;
        pt.window_start_t = chunk.start_t;
        pt.peak = dominant_frequency(periodogram(chunk, WindowFn::kHann), f_min, min_prominence);
        track.push_back(pt);
    }
    return track;
}

}  // namespace aqts
