#include <doctest.h>

#include <random>

#include "aqts/error.hpp"
#include "aqts/ingest.hpp"

using namespace aqts;

TEST_CASE("parse_records maps fields directly") {
    const auto recs = parse_records("epoch_s,adc\n100,2048\n101,2050");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].t == 100);
    CHECK(recs[0].adc == 2048);
    CHECK(recs[1].t == 101);
    CHECK(recs[1].adc == 2050);
}

TEST_CASE("parse_records header-only file is empty") {
    CHECK(parse_records("epoch_s,adc\n").empty());
    CHECK(parse_records("epoch_s,adc").empty());
}

TEST_CASE("parse_records rejects adc outside 12-bit range") {
    CHECK_THROWS_AS(parse_records("epoch_s,adc\n100,4096"), Error);
    CHECK_THROWS_AS(parse_records("epoch_s,adc\n100,-1"), Error);
    try {
        parse_records("epoch_s,adc\n100,4096");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kAdcOutOfRange);
    }
}

TEST_CASE("parse_records sorts and rejects duplicate timestamps") {
    const auto recs = parse_records("epoch_s,adc\n101,2\n100,1");
    CHECK(recs[0].t == 100);

    try {
        parse_records("epoch_s,adc\n100,1\n100,2");
        FAIL("expected DuplicateTimestamp");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kDuplicateTimestamp);
    }
}

TEST_CASE("parse_records error reports line number") {
    try {
        parse_records("epoch_s,adc\n100,1\nnonsense");
        FAIL("expected MalformedLine");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kMalformedLine);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("parse after serialize is the identity on random record sequences") {
    std::mt19937 gen(42);
    std::uniform_int_distribution<int> adc_dist(0, 4095);
    std::vector<RawRecord> recs;
    std::int64_t t = 1000;
    for (int i = 0; i < 500; ++i) {
        t += 1 + gen() % 3;
        recs.push_back({t, adc_dist(gen)});
    }
    const auto round = parse_records(serialize_records(recs));
    REQUIRE(round.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(round[i].t == recs[i].t);
        CHECK(round[i].adc == recs[i].adc);
    }
}

TEST_CASE("apply_calibration evaluates the declared polynomial") {
    std::vector<RawRecord> recs{{100, 2048}};
    CalibrationCurve curve{"dev", {0.0, 0.01}, std::nullopt};
    const auto out = apply_calibration(recs, curve);
    CHECK(out[0].value == doctest::Approx(20.48));
    CHECK((out[0].flags & kNegativeClampedCandidate) == 0);
}

TEST_CASE("identity curve leaves values unchanged") {
    std::vector<RawRecord> recs{{0, 100}, {1, 3}, {2, 4095}};
    CalibrationCurve curve{"dev", {0.0, 1.0}, std::nullopt};
    const auto out = apply_calibration(recs, curve);
    CHECK(out[0].value == 100.0);
    CHECK(out[1].value == 3.0);
    CHECK(out[2].value == 4095.0);
}

TEST_CASE("negative calibrated values are flagged, not clamped") {
    std::vector<RawRecord> recs{{0, 100}};
    CalibrationCurve curve{"dev", {-5.0, 0.01}, std::nullopt};
    const auto out = apply_calibration(recs, curve);
    CHECK(out[0].value == doctest::Approx(-4.0));
    CHECK((out[0].flags & kNegativeClampedCandidate) != 0);
}

TEST_CASE("temperature correction needs a matching series length") {
    std::vector<RawRecord> recs{{0, 100}, {1, 100}};
    CalibrationCurve curve{"dev", {0.0, 1.0}, 0.5};
    std::vector<double> temp{30.0};
    CHECK_THROWS_AS(apply_calibration(recs, curve, temp), Error);

    temp.push_back(25.0);
    const auto out = apply_calibration(recs, curve, temp);
    CHECK(out[0].value == doctest::Approx(100.0 + 0.5 * 5.0));
    CHECK(out[1].value == doctest::Approx(100.0));
}

TEST_CASE("load_calibration parses the JSON schema") {
    const auto curve =
        load_calibration(R"({"device_id":"orisen-7","coeffs":[0.1,0.01],"temp_coeff":null})");
    CHECK(curve.device_id == "orisen-7");
    REQUIRE(curve.coeffs.size() == 2);
    CHECK_FALSE(curve.temp_coeff.has_value());
}

namespace {

std::vector<TimedValue> timed(std::vector<std::pair<double, double>> tv) {
    std::vector<TimedValue> out;
    for (auto [t, v] : tv) out.push_back({t, v, kMeasured});
    return out;
}

}  // namespace

TEST_CASE("regularize keeps a gapless series intact") {
    const auto segs = regularize(timed({{0, 1}, {1, 2}, {2, 3}}), 1.0, 5);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].values == std::vector<double>{1, 2, 3});
    for (std::size_t k = 0; k < 3; ++k) CHECK(segs[0].flag_at(k) == kMeasured);
}

TEST_CASE("regularize linearly interpolates short gaps") {
    const auto segs = regularize(timed({{0, 0}, {1, 1}, {4, 4}}), 1.0, 5);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].values == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(segs[0].flag_at(1) == kMeasured);
    CHECK(segs[0].flag_at(2) == kInterpolated);
    CHECK(segs[0].flag_at(3) == kInterpolated);
    CHECK(segs[0].flag_at(4) == kMeasured);
}

TEST_CASE("regularize splits on long gaps") {
    const auto segs = regularize(timed({{0, 0}, {1, 1}, {20, 20}}), 1.0, 5);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].values == std::vector<double>{0, 1});
    CHECK(segs[1].values == std::vector<double>{20});
    CHECK(segs[1].start_t == 20.0);
}

TEST_CASE("regularize rejects empty input") {
    CHECK_THROWS_AS(regularize({}, 1.0, 5), Error);
}

TEST_CASE("interpolated sample count equals sum of gap fill-ins") {
    std::mt19937 gen(7);
    std::vector<TimedValue> recs;
    double t = 0.0;
    std::size_t expected_interp = 0;
    for (int i = 0; i < 300; ++i) {
        recs.push_back({t, static_cast<double>(i), kMeasured});
        const int gap = 1 + static_cast<int>(gen() % 5);  // gaps of 1..5 s, all <= max_gap
        if (i + 1 < 300) expected_interp += static_cast<std::size_t>(gap - 1);
        t += gap;
    }
    const auto segs = regularize(recs, 1.0, 5);
    REQUIRE(segs.size() == 1);
    std::size_t interp = 0;
    std::size_t measured = 0;
    for (std::size_t k = 0; k < segs[0].size(); ++k) {
        if (segs[0].flag_at(k) & kInterpolated) ++interp;
        if (segs[0].flag_at(k) & kMeasured) ++measured;
    }
    CHECK(interp == expected_interp);
    CHECK(measured == recs.size());  // every measured output equals one input
}
