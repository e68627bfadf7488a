#include <doctest.h>

#include <cmath>
#include <span>

#include "aqts/armodel.hpp"
#include "aqts/correlation.hpp"
#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"
#include "aqts/synth.hpp"

using namespace aqts;

namespace {

UniformSeries series_of(std::vector<double> v) {
    UniformSeries s;
    s.values = std::move(v);
    return s;
}

UniformSeries geometric(double ratio, std::size_t n) {
    std::vector<double> v(n);
    v[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] * ratio;
    return series_of(std::move(v));
}

}  // namespace

TEST_CASE("exact geometric series gives an exact AR(1) fit") {
    const auto model = fit_ar(geometric(0.5, 16), 1);
    CHECK(std::abs(model.a0) < 1e-12);
    CHECK(model.coeffs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(model.noise_var <= 1e-12);
}

TEST_CASE("fit_ar recovers the generator coefficient") {
    const auto s = gen_ar1(0.77, 1.0, 100000, 12);
    const auto model = fit_ar(s, 1);
    CHECK(model.coeffs[0] == doctest::Approx(0.77).epsilon(0.02 / 0.77));
}

TEST_CASE("fit_ar rejects constant and too-short series") {
    CHECK_THROWS_AS(fit_ar(series_of(std::vector<double>(100, 4.0)), 1), Error);
    CHECK_THROWS_AS(fit_ar(geometric(0.5, 10), 1), Error);
}

TEST_CASE("residuals of the exact fit are zero") {
    const auto s = geometric(0.5, 16);
    const auto r = residuals(s, fit_ar(s, 1));
    REQUIRE(r.size() == 15);
    for (double v : r.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("OLS residuals sum to zero") {
    const auto s = gen_lognormal_ar1(0.77, 1.0, 0.5, 5000, 13);
    const auto r = residuals(s, fit_ar(s, 2));
    double sum = 0.0;
    for (double v : r.values) sum += v;
    CHECK(std::abs(sum / static_cast<double>(r.size())) < 1e-10);
}

TEST_CASE("residual timing is aligned past the first m samples") {
    auto s = gen_ar1(0.5, 1.0, 100, 14);
    s.start_t = 1000.0;
    const auto r = residuals(s, fit_ar(s, 3));
    CHECK(r.start_t == doctest::Approx(1003.0));
    CHECK(r.size() == 97);
}

TEST_CASE("white-noise residual variance tracks the input variance") {
    const auto s = gen_ar1(0.0, 1.0, 50000, 15);
    const auto model = fit_ar(s, 1);
    const double var_in = detail::population_variance(s.values);
    CHECK(model.noise_var == doctest::Approx(var_in).epsilon(0.02));
}

TEST_CASE("noise_var never exceeds the series variance") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = gen_lognormal_ar1(0.6, 0.5, 0.7, 2000, seed);
        const auto model = fit_ar(s, 1);
        CHECK(model.noise_var <= detail::population_variance(s.values) + 1e-12);
    }
}

TEST_CASE("residuals of a fitted AR(1) are white") {
    const auto s = gen_ar1(0.77, 1.0, 20000, 16);
    const auto r = residuals(s, fit_ar(s, 1));
    const auto refit = fit_ar(r, 1);
    CHECK(std::abs(refit.coeffs[0]) < 1.96 / std::sqrt(static_cast<double>(r.size())));
}

TEST_CASE("predict_one_step applies the model to recent history") {
    ArModel model;
    model.order = 1;
    model.a0 = 1.0;
    model.coeffs = {0.5};
    const std::vector<double> history{2.0, 4.0};
    CHECK(predict_one_step(model, history) == doctest::Approx(3.0));

    model.coeffs = {0.0};
    CHECK(predict_one_step(model, history) == doctest::Approx(1.0));

    CHECK_THROWS_AS(predict_one_step(model, std::vector<double>{}), Error);
}

TEST_CASE("one-step prediction error matches noise_var on synthetic AR(1)") {
    const auto s = gen_ar1(0.77, 1.0, 50000, 18);
    const auto model = fit_ar(s, 1);
    double mse = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 1; t < s.size(); ++t) {
        const double pred =
            predict_one_step(model, std::span<const double>(s.values.data(), t));
        const double err = s.values[t] - pred;
        mse += err * err;
        ++count;
    }
    mse /= static_cast<double>(count);
    CHECK(mse == doctest::Approx(model.noise_var).epsilon(0.05));
}

TEST_CASE("Yule-Walker cross-check agrees with OLS on long AR(1) data") {
    const auto s = gen_ar1(0.77, 1.0, 100000, 19);
    const auto model = fit_ar(s, 1);
    const auto r = acf(s, 1);
    // Yule-Walker for AR(1): phi = r1
    CHECK(model.coeffs[0] == doctest::Approx(r.values[1]).epsilon(0.01));
}
