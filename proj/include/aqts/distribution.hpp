#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

struct Histogram {
    std::vector<double> edges;          // n_bins + 1, strictly increasing
    std::vector<std::uint64_t> counts;  // n_bins
};

// Maximum-likelihood lognormal parameters: moments of ln(values), with the
// population (1/n) standard deviation.
struct LogNormalFit {
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t n = 0;
    bool degenerate = false;  // sigma == 0
};

struct KsResult {
    double d_stat = 0.0;
    double p_asymptotic = 1.0;  // optimistic: parameters were estimated from the data
};

struct AveragingResult {
    int window_s = 0;
    LogNormalFit fit;
    KsResult ks;
};

struct Stratum {
    std::string name;
    double sigma = 0.0;
};

struct Allocation {
    std::string name;
    std::uint64_t n = 0;
};

// Equal-width bins, right-open except the last (closed) bin. Values outside an
// explicit range are ignored.
Histogram histogram(const UniformSeries& series, int n_bins,
                    std::optional<std::pair<double, double>> range = std::nullopt);

LogNormalFit fit_lognormal(const UniformSeries& series);

// One-sample KS statistic of the data against the fitted lognormal CDF, with
// the asymptotic Kolmogorov p-value.
KsResult ks_lognormal(const UniformSeries& series, const LogNormalFit& fit);

// Parametric bootstrap p-value for the same statistic: refits on each of
// n_boot resamples drawn from the fitted distribution, so the
// parameters-estimated-from-data bias is accounted for.
double ks_lognormal_bootstrap(const UniformSeries& series, const LogNormalFit& fit,
                              int n_boot, std::uint64_t seed);

// Survival function of the Kolmogorov distribution (asymptotic p for statistic
// d at sample size n).
double kolmogorov_p(double d, std::size_t n);

// Block-averages at each window length, then refits and retests; the paper's
// averaging-time invariance study.
std::vector<AveragingResult> averaging_invariance(const UniformSeries& series,
                                                  const std::vector<int>& window_lengths_s);

// Neyman allocation proportional to stratum sigma (equal stratum sizes
// assumed), largest-remainder rounded so the result sums exactly to total.
std::vector<Allocation> allocate_fixed_total(const std::vector<Stratum>& strata,
                                             std::uint64_t total);

// Per-stratum n = ceil((z * sigma / halfwidth)^2).
std::vector<Allocation> allocate_target_halfwidth(const std::vector<Stratum>& strata,
                                                  double halfwidth, double z);

}  // namespace aqts
