#include "aqts/armodel.hpp"

#include <algorithm>
#include <cmath>

#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"

namespace aqts {
namespace {

// Gaussian elimination with partial pivoting on the (m+1)x(m+1) normal system.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            throw Error(ErrorCode::kSingularDesign, "collinear lag regressors");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

ArModel fit_ar(const UniformSeries& series, std::size_t m) {
    const std::size_t n = series.size();
    if (m < 1) throw Error(ErrorCode::kConfigError, "AR order must be >= 1");
    if (n <= m + 10) {
        throw Error(ErrorCode::kSeriesTooShort,
                    "need more than m+10 samples, got " + std::to_string(n));
    }
    {
        const auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
        if (*mn == *mx) throw Error(ErrorCode::kDegenerateVariance, "constant series");
    }

    // Centering the regressors keeps the normal equations well conditioned for
    // series with a large baseline.
    const double center = detail::mean(series.values);
    const std::size_t rows = n - m;
    const std::size_t p = m + 1;  // intercept + m lags

    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t t = m; t < n; ++t) {
        // regressor vector: (1, x_{t-1}-c, ..., x_{t-m}-c)
        const double y = series.values[t] - center;
        for (std::size_t i = 0; i < p; ++i) {
            const double xi = (i == 0) ? 1.0 : series.values[t - i] - center;
            xty[i] += xi * y;
            for (std::size_t j = i; j < p; ++j) {
                const double xj = (j == 0) ? 1.0 : series.values[t - j] - center;
                xtx[i][j] += xi * xj;
            }
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < i; ++j) xtx[i][j] = xtx[j][i];
    }

    const std::vector<double> beta = solve_linear(xtx, xty);

    ArModel model;
    model.order = m;
    model.coeffs.assign(beta.begin() + 1, beta.end());
    // Undo the centering: a0' = c + b0 - c * sum(a_i)
    double coeff_sum = 0.0;
    for (double a : model.coeffs) coeff_sum += a;
    model.a0 = center + beta[0] - center * coeff_sum;
    model.n_fit = rows;

    double ss = 0.0;
    for (std::size_t t = m; t < n; ++t) {
        double pred = model.a0;
        for (std::size_t i = 1; i <= m; ++i) pred += model.coeffs[i - 1] * series.values[t - i];
        const double r = series.values[t] - pred;
        ss += r * r;
    }
    model.noise_var = ss / static_cast<double>(rows);
    return model;
}

UniformSeries residuals(const UniformSeries& series, const ArModel& model) {
    const std::size_t n = series.size();
    const std::size_t m = model.order;
    if (n <= m) {
        throw Error(ErrorCode::kSeriesTooShort,
                    "series length " + std::to_string(n) + " vs order " + std::to_string(m));
    }
    UniformSeries out;
    out.start_t = series.time_at(m);
    out.rate_hz = series.rate_hz;
    out.unit = series.unit;
    out.values.reserve(n - m);
    for (std::size_t t = m; t < n; ++t) {
        double pred = model.a0;
        for (std::size_t i = 1; i <= m; ++i) pred += model.coeffs[i - 1] * series.values[t - i];
        out.values.push_back(series.values[t] - pred);
    }
    return out;
}

double predict_one_step(const ArModel& model, std::span<const double> history) {
    if (history.size() < model.order) {
        throw Error(ErrorCode::kHistoryTooShort, "need at least " + std::to_string(model.order) +
                                                     " samples, got " +
                                                     std::to_string(history.size()));
    }
    double pred = model.a0;
    for (std::size_t i = 1; i <= model.order; ++i) {
        pred += model.coeffs[i - 1] * history[history.size() - i];
    }
    return pred;
}

}  // namespace aqts
