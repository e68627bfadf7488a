#pragma once

#include <cstddef>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

enum class DrmBinning { kEqualCount, kEqualWidth };

// Binned mean of the next-step AR residual against the current value: a flat
// map indicates linear dynamics, structure is the lag-one nonlinearity.
struct DrmResult {
    std::vector<double> bin_centers;    // mean of x_t within each bin
    std::vector<double> mean_residual;  // mean r_{t+1} per bin
    std::vector<double> stderr_;        // std / sqrt(count) per bin
    std::vector<std::size_t> counts;
    DrmBinning binning = DrmBinning::kEqualCount;
};

inline constexpr std::size_t kDrmMinCountPerBin = 30;

// Fits AR(m) in-sample, pairs (x_t, r_{t+1}), and bins the pairs by x_t.
// equal_count sorts by x_t and splits into groups whose sizes differ by at
// most one; equal_width uses equal intervals over [min x, max x].
DrmResult compute_drm(const UniformSeries& series, std::size_t m, std::size_t n_bins = 7,
                      DrmBinning binning = DrmBinning::kEqualCount);

}  // namespace aqts
