#include <doctest.h>

#include <algorithm>

#include "aqts/detail/stats.hpp"
#include "aqts/error.hpp"
#include "aqts/resample.hpp"
#include "aqts/synth.hpp"

using namespace aqts;

namespace {

UniformSeries series_of(std::vector<double> v, double rate = 1.0) {
    UniformSeries s;
    s.rate_hz = rate;
    s.values = std::move(v);
    return s;
}

}  // namespace

TEST_CASE("block_average basic arithmetic") {
    const auto out = block_average(series_of({1, 2, 3, 4}), 2);
    CHECK(out.values == std::vector<double>{1.5, 3.5});
    CHECK(out.rate_hz == doctest::Approx(0.5));
}

TEST_CASE("block_average of a constant series is the constant") {
    const auto out = block_average(series_of(std::vector<double>(30, 7.25)), 4);
    REQUIRE(out.size() == 7);  // trailing partial block dropped
    for (double v : out.values) CHECK(v == doctest::Approx(7.25));
}

TEST_CASE("block averaging never increases population variance") {
    const auto s = gen_ar1(0.5, 1.0, 5000, 99);
    const double var_in = detail::population_variance(s.values);
    for (int k : {2, 5, 10}) {
        const auto out = block_average(s, k);
        CHECK(detail::population_variance(out.values) <= var_in + 1e-12);
    }
}

TEST_CASE("block_average composes multiplicatively when lengths divide") {
    const auto s = gen_ar1(0.3, 1.0, 1200, 5);
    const auto two_step = block_average(block_average(s, 3), 4);
    const auto one_step = block_average(s, 12);
    REQUIRE(two_step.size() == one_step.size());
    for (std::size_t i = 0; i < one_step.size(); ++i) {
        CHECK(two_step.values[i] == doctest::Approx(one_step.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("block_average rejects oversized blocks") {
    CHECK_THROWS_AS(block_average(series_of({1, 2}), 3), Error);
}

TEST_CASE("decimate_extremes keeps the largest deviation from the block mean") {
    CHECK(decimate_extremes(series_of({1, 1, 9}), 3).values == std::vector<double>{9});
    CHECK(decimate_extremes(series_of({-9, 1, 1}), 3).values == std::vector<double>{-9});
}

TEST_CASE("decimate_extremes breaks ties toward the earliest index") {
    CHECK(decimate_extremes(series_of({4, 4, 4}), 3).values == std::vector<double>{4});
    // symmetric deviations: first wins
    CHECK(decimate_extremes(series_of({1, 3, 2}), 3).values == std::vector<double>{1});
}

TEST_CASE("decimate_extremes output is a subset of the input") {
    const auto s = gen_lognormal_ar1(0.77, 1.0, 0.5, 2000, 11);
    const auto out = decimate_extremes(s, 10);
    for (double v : out.values) {
        CHECK(std::find(s.values.begin(), s.values.end(), v) != s.values.end());
    }
}

TEST_CASE("moving_average basics") {
    CHECK(moving_average(series_of({1, 2, 3}), 3).values == std::vector<double>{2});

    const auto s = gen_ar1(0.5, 1.0, 50, 3);
    const auto identity = moving_average(s, 1);
    CHECK(identity.values == s.values);

    const auto c = moving_average(series_of(std::vector<double>(10, 2.5)), 5);
    REQUIRE(c.size() == 6);
    for (double v : c.values) CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("moving_average output timing is centered") {
    auto s = series_of({1, 2, 3, 4, 5});
    s.start_t = 100.0;
    const auto out = moving_average(s, 3);
    CHECK(out.start_t == doctest::Approx(101.0));
    CHECK(out.rate_hz == s.rate_hz);
}

TEST_CASE("moving_average rejects even or oversized windows") {
    CHECK_THROWS_AS(moving_average(series_of({1, 2, 3, 4}), 2), Error);
    CHECK_THROWS_AS(moving_average(series_of({1, 2, 3}), 5), Error);
}
