#include "aqts/correlation.hpp"

#include <cmath>

#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"

namespace aqts {

CorrelationSequence acf(const UniformSeries& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n < 2 || max_lag >= n / 2) {
        throw Error(ErrorCode::kLagTooLarge,
                    "max_lag " + std::to_string(max_lag) + " vs length " + std::to_string(n));
    }
    const double m = detail::mean(series.values);
    double denom = 0.0;
    for (double x : series.values) {
        const double d = x - m;
        denom += d * d;
    }
    if (denom == 0.0) throw Error(ErrorCode::kDegenerateVariance, "constant series");

    CorrelationSequence out;
    out.kind = CorrelationSequence::Kind::kAcf;
    out.n = n;
    out.values.resize(max_lag + 1);
    out.values[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            num += (series.values[t] - m) * (series.values[t + k] - m);
        }
        out.values[k] = num / denom;
    }
    return out;
}

CorrelationSequence pacf(const UniformSeries& series, std::size_t max_lag) {
    const CorrelationSequence r = acf(series, max_lag);

    CorrelationSequence out;
    out.kind = CorrelationSequence::Kind::kPacf;
    out.n = r.n;
    out.values.resize(max_lag + 1);
    out.values[0] = 1.0;
    if (max_lag == 0) return out;

    // Durbin-Levinson: phi[k][k] is the order-k reflection coefficient.
    std::vector<double> phi_prev(max_lag + 1, 0.0);
    std::vector<double> phi_cur(max_lag + 1, 0.0);
    double err = 1.0;  // prediction-error variance, in units of r[0]

    phi_prev[1] = r.values[1];
    out.values[1] = r.values[1];
    err *= 1.0 - r.values[1] * r.values[1];

    for (std::size_t k = 2; k <= max_lag; ++k) {
        if (err <= 0.0) {
            throw Error(ErrorCode::kNumericalBreakdown,
                        "prediction-error variance <= 0 at order " + std::to_string(k));
        }
        double num = r.values[k];
        for (std::size_t j = 1; j < k; ++j) num -= phi_prev[j] * r.values[k - j];
        const double refl = num / err;
        phi_cur[k] = refl;
        for (std::size_t j = 1; j < k; ++j) phi_cur[j] = phi_prev[j] - refl * phi_prev[k - j];
        phi_prev = phi_cur;
        out.values[k] = refl;
        err *= 1.0 - refl * refl;
    }
    return out;
}

std::size_t first_insignificant_lag(const CorrelationSequence& corr) {
    const double bound = 1.96 / std::sqrt(static_cast<double>(corr.n));
    for (std::size_t k = 1; k < corr.values.size(); ++k) {
        if (std::abs(corr.values[k]) < bound) return k;
    }
    return corr.values.size();  // max_lag + 1
}

}  // namespace aqts
