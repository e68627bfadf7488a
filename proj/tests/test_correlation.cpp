#include <doctest.h>

#include <cmath>

#include "aqts/correlation.hpp"
#include "aqts/error.hpp"
#include "aqts/synth.hpp"

using namespace aqts;

namespace {

UniformSeries series_of(std::vector<double> v) {
    UniformSeries s;
    s.values = std::move(v);
    return s;
}

}  // namespace

TEST_CASE("acf lag 0 is exactly 1") {
    const auto s = gen_ar1(0.5, 1.0, 500, 1);
    CHECK(acf(s, 10).values[0] == 1.0);
}

TEST_CASE("alternating series has lag-1 correlation near -1") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const auto r = acf(series_of(std::move(v)), 2);
    CHECK(r.values[1] == doctest::Approx(-1.0).epsilon(2.0 / 1000.0));
}

TEST_CASE("acf recovers the AR(1) coefficient") {
    const auto s = gen_ar1(0.77, 1.0, 100000, 2);
    const auto r = acf(s, 5);
    CHECK(r.values[1] == doctest::Approx(0.77).epsilon(0.02 / 0.77));
}

TEST_CASE("acf rejects constant series and oversized lags") {
    CHECK_THROWS_AS(acf(series_of(std::vector<double>(100, 3.0)), 5), Error);
    CHECK_THROWS_AS(acf(series_of({1, 2, 3, 4}), 2), Error);  // max_lag >= n/2
}

TEST_CASE("acf is invariant under affine transforms") {
    const auto s = gen_ar1(0.6, 1.0, 2000, 9);
    auto mapped = s;
    for (double& v : mapped.values) v = -2.5 * v + 7.0;
    const auto r1 = acf(s, 20);
    const auto r2 = acf(mapped, 20);
    for (std::size_t k = 0; k <= 20; ++k) {
        CHECK(r2.values[k] == doctest::Approx(r1.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("pacf[1] equals acf[1] exactly") {
    const auto s = gen_ar1(0.77, 1.0, 5000, 4);
    CHECK(pacf(s, 10).values[1] == acf(s, 10).values[1]);
}

TEST_CASE("pacf of AR(1) cuts off after lag 1") {
    const auto s = gen_ar1(0.77, 1.0, 100000, 5);
    const auto p = pacf(s, 5);
    const double bound = 1.96 / std::sqrt(100000.0);
    CHECK(std::abs(p.values[2]) < bound);
}

TEST_CASE("pacf of AR(2) recovers the lag-2 coefficient") {
    // x_t = 0.5 x_{t-1} + 0.3 x_{t-2} + eps, built from a seeded AR(1) innovation stream
    const auto noise = gen_ar1(0.0, 1.0, 100000, 6);
    std::vector<double> v(noise.size(), 0.0);
    for (std::size_t t = 2; t < v.size(); ++t) {
        v[t] = 0.5 * v[t - 1] + 0.3 * v[t - 2] + noise.values[t];
    }
    const auto p = pacf(series_of(std::move(v)), 4);
    CHECK(p.values[2] == doctest::Approx(0.3).epsilon(0.02 / 0.3));
}

TEST_CASE("reflection coefficients stay within [-1, 1] on arbitrary series") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = gen_lognormal_ar1(0.9, 0.0, 1.0, 500, seed);
        const auto p = pacf(s, 40);
        for (double v : p.values) CHECK(std::abs(v) <= 1.0 + 1e-9);
    }
}

TEST_CASE("white-noise first insignificant lag is small") {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto s = gen_ar1(0.0, 1.0, 3600, seed);
        if (first_insignificant_lag(acf(s, 20)) <= 2) ++ok;
    }
    CHECK(ok >= 90);
}

TEST_CASE("first insignificant lag matches the closed form on geometric acf") {
    for (std::size_t n : {1800u, 7200u}) {
        CorrelationSequence corr;
        corr.kind = CorrelationSequence::Kind::kAcf;
        corr.n = n;
        corr.values.resize(41);
        for (std::size_t k = 0; k <= 40; ++k) corr.values[k] = std::pow(0.77, k);

        // independent oracle: scan the closed form directly
        const double bound = 1.96 / std::sqrt(static_cast<double>(n));
        std::size_t expected = 41;
        for (std::size_t k = 1; k <= 40; ++k) {
            if (std::pow(0.77, k) < bound) {
                expected = k;
                break;
            }
        }
        CHECK(first_insignificant_lag(corr) == expected);
    }
}

TEST_CASE("all-significant correlation sequence returns max_lag + 1") {
    CorrelationSequence corr;
    corr.n = 10000;
    corr.values = {1.0, 1.0, 1.0, 1.0};
    CHECK(first_insignificant_lag(corr) == 4);
}
