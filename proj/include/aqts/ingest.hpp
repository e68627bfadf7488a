#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

struct RawRecord {
    std::int64_t t = 0;  // epoch seconds
    int adc = 0;         // 12-bit counts, 0..4095
};

// Per-device polynomial ADC -> ppm mapping, c0 + c1*adc + ... + cd*adc^d,
// with an optional linear temperature correction about 25 degC.
struct CalibrationCurve {
    std::string device_id;
    std::vector<double> coeffs;  // non-empty, degree <= 5
    std::optional<double> temp_coeff;
};

// Parses `epoch_s,adc` CSV. Output is sorted by timestamp; duplicate
// timestamps and out-of-range ADC counts are errors, not repairs.
std::vector<RawRecord> parse_records(std::string_view csv_text);

// Parses pre-calibrated `epoch_s,ppm` CSV.
std::vector<TimedValue> parse_ppm_records(std::string_view csv_text);

std::string serialize_records(std::span<const RawRecord> records);

// Loads a calibration JSON file: {"device_id": str, "coeffs": [...], "temp_coeff": num|null}.
CalibrationCurve load_calibration(const std::string& json_text);

std::vector<TimedValue> apply_calibration(std::span<const RawRecord> records,
                                          const CalibrationCurve& curve,
                                          std::span<const double> temp_c = {});

// Puts timestamped samples on a fixed-rate grid. Gaps up to max_gap_s are
// linearly interpolated (and flagged); longer gaps split the output into
// separate contiguous segments.
std::vector<UniformSeries> regularize(std::span<const TimedValue> records, double rate_hz,
                                      int max_gap_s);

}  // namespace aqts
