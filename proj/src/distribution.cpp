#include "aqts/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aqts/detail/rng.hpp"
#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"
#include "aqts/resample.hpp"

namespace aqts {
namespace {

void require_nonempty(const UniformSeries& series) {
    if (series.values.empty()) throw Error(ErrorCode::kEmptySeries, "empty series");
}

std::vector<double> log_values(const UniformSeries& series) {
    require_nonempty(series);
    std::vector<double> lg;
    lg.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double v = series.values[i];
        if (!(v > 0.0)) {
            throw Error(ErrorCode::kNonPositiveValue,
                        "value " + std::to_string(v) + " at index " + std::to_string(i));
        }
        lg.push_back(std::log(v));
    }
    return lg;
}

double ks_statistic(std::vector<double> sorted_vals, double mu, double sigma) {
    std::sort(sorted_vals.begin(), sorted_vals.end());
    const auto n = static_cast<double>(sorted_vals.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_vals.size(); ++i) {
        const double f = detail::normal_cdf((std::log(sorted_vals[i]) - mu) / sigma);
        const double lo = f - static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n - f;
        d = std::max({d, lo, hi});
    }
    return d;
}

}  // namespace

Histogram histogram(const UniformSeries& series, int n_bins,
                    std::optional<std::pair<double, double>> range) {
    require_nonempty(series);
    if (n_bins < 1) throw Error(ErrorCode::kConfigError, "n_bins must be >= 1");

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
        if (!(lo < hi)) throw Error(ErrorCode::kDegenerateRange, "range lo >= hi");
    } else {
        auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
        lo = *mn;
        hi = *mx;
        if (lo == hi) {
            throw Error(ErrorCode::kDegenerateRange, "all values equal and no explicit range");
        }
    }

    Histogram h;
    h.edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int i = 0; i <= n_bins; ++i) {
        h.edges[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
    }
    h.edges.back() = hi;  // guard against round-off at the top edge
    h.counts.assign(static_cast<std::size_t>(n_bins), 0);

    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (double v : series.values) {
        if (v < lo || v > hi) continue;
        auto bin = static_cast<long>((v - lo) / width);
        if (bin >= n_bins) bin = n_bins - 1;  // last bin is closed on the right
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    return h;
}

LogNormalFit fit_lognormal(const UniformSeries& series) {
    const std::vector<double> lg = log_values(series);

    LogNormalFit fit;
    fit.n = lg.size();
    fit.mu = detail::mean(lg);
    const auto [mn, mx] = std::minmax_element(lg.begin(), lg.end());
    if (*mn == *mx) {
        fit.mu = *mn;
        fit.sigma = 0.0;
    } else {
        fit.sigma = detail::population_stddev(lg);
    }
    fit.degenerate = (fit.sigma == 0.0) || fit.n < 2;
    return fit;
}

KsResult ks_lognormal(const UniformSeries& series, const LogNormalFit& fit) {
    if (fit.degenerate || fit.sigma <= 0.0) {
        throw Error(ErrorCode::kDegenerateFit, "KS needs a non-degenerate fit");
    }
    log_values(series);  // validate positivity

    KsResult r;
    r.d_stat = ks_statistic(series.values, fit.mu, fit.sigma);
    r.p_asymptotic = kolmogorov_p(r.d_stat, series.size());
    return r;
}

double kolmogorov_p(double d, std::size_t n) {
    if (d <= 0.0) return 1.0;
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_lognormal_bootstrap(const UniformSeries& series, const LogNormalFit& fit,
                              int n_boot, std::uint64_t seed) {
    const KsResult observed = ks_lognormal(series, fit);
    detail::Xoshiro256pp rng(seed);
    int exceed = 0;
    std::vector<double> sample(series.size());
    for (int b = 0; b < n_boot; ++b) {
        std::vector<double> logs(series.size());
        for (std::size_t i = 0; i < sample.size(); ++i) {
            logs[i] = fit.mu + fit.sigma * rng.normal();
            sample[i] = std::exp(logs[i]);
        }
        const double mu_b = detail::mean(logs);
        const double sigma_b = detail::population_stddev(logs);
        if (ks_statistic(sample, mu_b, sigma_b) >= observed.d_stat) ++exceed;
    }
    return static_cast<double>(exceed + 1) / static_cast<double>(n_boot + 1);
}

std::vector<AveragingResult> averaging_invariance(const UniformSeries& series,
                                                  const std::vector<int>& window_lengths_s) {
    std::vector<AveragingResult> results;
    results.reserve(window_lengths_s.size());
    for (int w : window_lengths_s) {
        const auto k = static_cast<int>(std::llround(w * series.rate_hz));
        if (k < 1 || series.size() / static_cast<std::size_t>(k) < 30) {
            throw Error(ErrorCode::kTooFewBlocks,
                        "window " + std::to_string(w) + " s leaves fewer than 30 blocks");
        }
        AveragingResult r;
        r.window_s = w;
        const UniformSeries averaged = block_average(series, k);
        r.fit = fit_lognormal(averaged);
        r.ks = ks_lognormal(averaged, r.fit);
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<Allocation> allocate_fixed_total(const std::vector<Stratum>& strata,
                                             std::uint64_t total) {
    double sigma_sum = 0.0;
    for (const Stratum& s : strata) sigma_sum += s.sigma;
    if (strata.empty() || sigma_sum <= 0.0) {
        throw Error(ErrorCode::kAllZeroSigma, "no stratum has positive sigma");
    }

    // Largest-remainder rounding so the allocations sum exactly to total.
    std::vector<Allocation> out(strata.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < strata.size(); ++i) {
        const double exact = static_cast<double>(total) * strata[i].sigma / sigma_sum;
        const double base = std::floor(exact);
        out[i].name = strata[i].name;
        out[i].n = static_cast<std::uint64_t>(base);
        assigned += out[i].n;
        remainders.push_back({exact - base, i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; assigned < total; ++j, ++assigned) {
        ++out[remainders[j % remainders.size()].second].n;
    }
    return out;
}

std::vector<Allocation> allocate_target_halfwidth(const std::vector<Stratum>& strata,
                                                  double halfwidth, double z) {
    if (halfwidth <= 0.0) throw Error(ErrorCode::kConfigError, "halfwidth must be > 0");
    bool any_positive = false;
    for (const Stratum& s : strata) any_positive |= s.sigma > 0.0;
    if (strata.empty() || !any_positive) {
        throw Error(ErrorCode::kAllZeroSigma, "no stratum has positive sigma");
    }
    std::vector<Allocation> out(strata.size());
    for (std::size_t i = 0; i < strata.size(); ++i) {
        out[i].name = strata[i].name;
        const double ratio = z * strata[i].sigma / halfwidth;
        out[i].n = static_cast<std::uint64_t>(std::ceil(ratio * ratio));
    }
    return out;
}

}  // namespace aqts
