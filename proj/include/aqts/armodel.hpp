#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

// AR(m) model x_t = a0 + a1*x_{t-1} + ... + am*x_{t-m} + r_t, coefficients from
// ordinary least squares.
struct ArModel {
    std::size_t order = 1;
    double a0 = 0.0;
    std::vector<double> coeffs;  // a1..am
    double noise_var = 0.0;      // mean squared residual of the fit
    std::size_t n_fit = 0;
};

// OLS of x_t on (1, x_{t-1}, ..., x_{t-m}) over t = m..n-1.
ArModel fit_ar(const UniformSeries& series, std::size_t m);

// Residual series r_t = x_t - prediction, t = m..n-1; output sample j sits at
// the time of input index m+j.
UniformSeries residuals(const UniformSeries& series, const ArModel& model);

// a0 + sum a_i * history[end-i]; history holds the most recent value last.
double predict_one_step(const ArModel& model, std::span<const double> history);

}  // namespace aqts
