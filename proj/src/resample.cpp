#include "aqts/resample.hpp"

#include <cmath>
#include <cstddef>

#include "aqts/error.hpp"

namespace aqts {
namespace {

void check_block(const UniformSeries& series, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > series.size()) {
        throw Error(ErrorCode::kBlockTooLarge,
                    "block size " + std::to_string(k) + " vs length " +
                        std::to_string(series.size()));
    }
}

std::uint8_t merge_flags(const UniformSeries& s, std::size_t begin, std::size_t end) {
    std::uint8_t f = 0;
    for (std::size_t i = begin; i < end; ++i) f |= s.flag_at(i);
    return f;
}

}  // namespace

UniformSeries block_average(const UniformSeries& series, int k) {
    check_block(series, k);
    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t n_blocks = series.size() / kk;

    UniformSeries out;
    out.start_t = series.start_t;
    out.rate_hz = series.rate_hz / static_cast<double>(k);
    out.unit = series.unit;
    out.values.reserve(n_blocks);
    out.flags.reserve(n_blocks);
    for (std::size_t j = 0; j < n_blocks; ++j) {
        double s = 0.0;
        for (std::size_t i = j * kk; i < (j + 1) * kk; ++i) s += series.values[i];
        out.values.push_back(s / static_cast<double>(k));
        out.flags.push_back(merge_flags(series, j * kk, (j + 1) * kk));
    }
    return out;
}

UniformSeries decimate_extremes(const UniformSeries& series, int k) {
    check_block(series, k);
    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t n_blocks = series.size() / kk;

    UniformSeries out;
    out.start_t = series.start_t;
    out.rate_hz = series.rate_hz / static_cast<double>(k);
    out.unit = series.unit;
    out.values.reserve(n_blocks);
    out.flags.reserve(n_blocks);
    for (std::size_t j = 0; j < n_blocks; ++j) {
        double mean = 0.0;
        for (std::size_t i = j * kk; i < (j + 1) * kk; ++i) mean += series.values[i];
        mean /= static_cast<double>(k);
        std::size_t best = j * kk;
        double best_dev = std::abs(series.values[best] - mean);
        for (std::size_t i = j * kk + 1; i < (j + 1) * kk; ++i) {
            const double dev = std::abs(series.values[i] - mean);
            if (dev > best_dev) {
                best = i;
                best_dev = dev;
            }
        }
        out.values.push_back(series.values[best]);
        out.flags.push_back(series.flag_at(best));
    }
    return out;
}

UniformSeries moving_average(const UniformSeries& series, int w) {
    if (w < 1 || w % 2 == 0) {
        throw Error(ErrorCode::kEvenWindow, "window must be odd, got " + std::to_string(w));
    }
    if (static_cast<std::size_t>(w) > series.size()) {
        throw Error(ErrorCode::kWindowTooLarge,
                    "window " + std::to_string(w) + " vs length " + std::to_string(series.size()));
    }
    const std::size_t ww = static_cast<std::size_t>(w);
    const std::size_t n_out = series.size() - ww + 1;

    UniformSeries out;
    out.start_t = series.time_at(ww / 2);
    out.rate_hz = series.rate_hz;
    out.unit = series.unit;
    out.values.reserve(n_out);
    out.flags.reserve(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        double s = 0.0;
        for (std::size_t i = j; i < j + ww; ++i) s += series.values[i];
        out.values.push_back(s / static_cast<double>(w));
        out.flags.push_back(merge_flags(series, j, j + ww));
    }
    return out;
}

}  // namespace aqts
