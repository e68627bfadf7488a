#include "aqts/drm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aqts/armodel.hpp"
#include "aqts/error.hpp"

namespace aqts {
namespace {

struct Pair {
    double x;  // x_t
    double r;  // r_{t+1}
};

void fill_bin(DrmResult& out, std::size_t bin, const std::vector<Pair>& pairs,
              std::size_t begin, std::size_t end) {
    const std::size_t count = end - begin;
    out.counts[bin] = count;
    if (count == 0) return;
    double sx = 0.0, sr = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        sx += pairs[i].x;
        sr += pairs[i].r;
    }
    const double mx = sx / static_cast<double>(count);
    const double mr = sr / static_cast<double>(count);
    double ss = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double d = pairs[i].r - mr;
        ss += d * d;
    }
    out.bin_centers[bin] = mx;
    out.mean_residual[bin] = mr;
    if (count > 1) {
        out.stderr_[bin] = std::sqrt(ss / static_cast<double>(count - 1)) /
                           std::sqrt(static_cast<double>(count));
    }
}

}  // namespace

DrmResult compute_drm(const UniformSeries& series, std::size_t m, std::size_t n_bins,
                      DrmBinning binning) {
    if (n_bins < 1) throw Error(ErrorCode::kConfigError, "n_bins must be >= 1");
    if (series.size() < n_bins * kDrmMinCountPerBin + m) {
        throw Error(ErrorCode::kInsufficientData,
                    "need at least " + std::to_string(n_bins * kDrmMinCountPerBin + m) +
                        " samples, got " + std::to_string(series.size()));
    }

    const ArModel model = fit_ar(series, m);
    const UniformSeries resid = residuals(series, model);

    // resid sample j is r_t for t = m+j; pair it with the predictor x_{t-1}.
    std::vector<Pair> pairs(resid.size());
    for (std::size_t j = 0; j < resid.size(); ++j) {
        pairs[j] = {series.values[m + j - 1], resid.values[j]};
    }

    DrmResult out;
    out.binning = binning;
    out.bin_centers.assign(n_bins, 0.0);
    out.mean_residual.assign(n_bins, 0.0);
    out.stderr_.assign(n_bins, 0.0);
    out.counts.assign(n_bins, 0);

    if (binning == DrmBinning::kEqualCount) {
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const Pair& a, const Pair& b) { return a.x < b.x; });
        const std::size_t base = pairs.size() / n_bins;
        const std::size_t extra = pairs.size() % n_bins;
        std::size_t begin = 0;
        for (std::size_t b = 0; b < n_bins; ++b) {
            const std::size_t len = base + (b < extra ? 1 : 0);
            fill_bin(out, b, pairs, begin, begin + len);
            begin += len;
        }
    } else {
        auto [mn_it, mx_it] = std::minmax_element(
            pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.x < b.x; });
        const double lo = mn_it->x;
        const double hi = mx_it->x;
        if (lo == hi) throw Error(ErrorCode::kDegenerateVariance, "constant predictor values");
        const double width = (hi - lo) / static_cast<double>(n_bins);

        std::vector<std::vector<Pair>> groups(n_bins);
        for (const Pair& p : pairs) {
            auto b = static_cast<std::size_t>((p.x - lo) / width);
            if (b >= n_bins) b = n_bins - 1;
            groups[b].push_back(p);
        }
        for (std::size_t b = 0; b < n_bins; ++b) {
            fill_bin(out, b, groups[b], 0, groups[b].size());
            if (groups[b].empty()) {
                out.bin_centers[b] = lo + (static_cast<double>(b) + 0.5) * width;
            }
        }
    }
    return out;
}

}  // namespace aqts
