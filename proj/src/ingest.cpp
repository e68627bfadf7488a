#include "aqts/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aqts/error.hpp"

namespace aqts {
namespace {

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    try {
        std::size_t pos = 0;
        out = std::stod(std::string(s), &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

struct Line {
    std::size_t number;  // 1-based
    std::string_view text;
};

// Splits into lines, keeping 1-based numbering for error reports.
std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t line_no = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back({line_no, trim_cr(text.substr(pos, nl - pos))});
        pos = nl + 1;
        ++line_no;
    }
    return lines;
}

void check_header(const std::vector<Line>& lines, std::string_view expected) {
    if (lines.empty() || lines.front().text != expected) {
        throw Error(ErrorCode::kMalformedLine,
                    "line 1: expected header '" + std::string(expected) + "'");
    }
}

std::pair<std::string_view, std::string_view> split_two_fields(const Line& line) {
    const std::size_t comma = line.text.find(',');
    if (comma == std::string_view::npos ||
        line.text.find(',', comma + 1) != std::string_view::npos) {
        throw Error(ErrorCode::kMalformedLine,
                    "line " + std::to_string(line.number) + ": expected two fields");
    }
    return {line.text.substr(0, comma), line.text.substr(comma + 1)};
}

}  // namespace

std::vector<RawRecord> parse_records(std::string_view csv_text) {
    const auto lines = split_lines(csv_text);
    check_header(lines, "epoch_s,adc");

    std::vector<RawRecord> records;
    records.reserve(lines.size() > 0 ? lines.size() - 1 : 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.text.empty()) continue;
        auto [t_field, adc_field] = split_two_fields(line);
        RawRecord rec;
        if (!parse_number(t_field, rec.t) || !parse_number(adc_field, rec.adc)) {
            throw Error(ErrorCode::kMalformedLine,
                        "line " + std::to_string(line.number) + ": non-integer field");
        }
        if (rec.adc < 0 || rec.adc > 4095) {
            throw Error(ErrorCode::kAdcOutOfRange, "line " + std::to_string(line.number) +
                                                       ": adc " + std::to_string(rec.adc));
        }
        records.push_back(rec);
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const RawRecord& a, const RawRecord& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].t == records[i - 1].t) {
            throw Error(ErrorCode::kDuplicateTimestamp, "t=" + std::to_string(records[i].t));
        }
    }
    return records;
}

std::vector<TimedValue> parse_ppm_records(std::string_view csv_text) {
    const auto lines = split_lines(csv_text);
    check_header(lines, "epoch_s,ppm");

    std::vector<TimedValue> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.text.empty()) continue;
        auto [t_field, ppm_field] = split_two_fields(line);
        TimedValue rec;
        std::int64_t t = 0;
        if (!parse_number(t_field, t) || !parse_double(ppm_field, rec.value)) {
            throw Error(ErrorCode::kMalformedLine,
                        "line " + std::to_string(line.number) + ": bad field");
        }
        rec.t = static_cast<double>(t);
        rec.flags = kMeasured;
        if (rec.value < 0.0) rec.flags |= kNegativeClampedCandidate;
        records.push_back(rec);
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const TimedValue& a, const TimedValue& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].t == records[i - 1].t) {
            throw Error(ErrorCode::kDuplicateTimestamp,
                        "t=" + std::to_string(static_cast<std::int64_t>(records[i].t)));
        }
    }
    return records;
}

std::string serialize_records(std::span<const RawRecord> records) {
    std::ostringstream out;
    out << "epoch_s,adc\n";
    for (const RawRecord& r : records) out << r.t << ',' << r.adc << '\n';
    return out.str();
}

CalibrationCurve load_calibration(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedLine, std::string("calibration JSON: ") + e.what());
    }
    CalibrationCurve curve;
    try {
        curve.device_id = j.at("device_id").get<std::string>();
        curve.coeffs = j.at("coeffs").get<std::vector<double>>();
        if (j.contains("temp_coeff") && !j["temp_coeff"].is_null()) {
            curve.temp_coeff = j["temp_coeff"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedLine, std::string("calibration JSON: ") + e.what());
    }
    if (curve.coeffs.empty() || curve.coeffs.size() > 6) {
        throw Error(ErrorCode::kMalformedLine, "calibration coeffs must have degree 0..5");
    }
    return curve;
}

std::vector<TimedValue> apply_calibration(std::span<const RawRecord> records,
                                          const CalibrationCurve& curve,
                                          std::span<const double> temp_c) {
    if (!temp_c.empty() && temp_c.size() != records.size()) {
        throw Error(ErrorCode::kLengthMismatch,
                    "temperature series length " + std::to_string(temp_c.size()) +
                        " != record count " + std::to_string(records.size()));
    }
    std::vector<TimedValue> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        // Horner evaluation of the calibration polynomial
        double ppm = 0.0;
        for (std::size_t j = curve.coeffs.size(); j-- > 0;) {
            ppm = ppm * static_cast<double>(records[i].adc) + curve.coeffs[j];
        }
        if (!temp_c.empty() && curve.temp_coeff) {
            ppm += *curve.temp_coeff * (temp_c[i] - 25.0);
        }
        TimedValue tv;
        tv.t = static_cast<double>(records[i].t);
        tv.value = ppm;
        tv.flags = kMeasured;
        if (ppm < 0.0) tv.flags |= kNegativeClampedCandidate;
        out.push_back(tv);
    }
    return out;
}

std::vector<UniformSeries> regularize(std::span<const TimedValue> records, double rate_hz,
                                      int max_gap_s) {
    if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no records to regularize");

    const double dt = 1.0 / rate_hz;
    std::vector<UniformSeries> segments;

    UniformSeries seg;
    seg.start_t = records[0].t;
    seg.rate_hz = rate_hz;
    seg.values.push_back(records[0].value);
    seg.flags.push_back(records[0].flags);

    for (std::size_t i = 1; i < records.size(); ++i) {
        const TimedValue& prev = records[i - 1];
        const TimedValue& cur = records[i];
        const double gap = cur.t - prev.t;
        const auto steps = static_cast<long long>(std::llround(gap * rate_hz));

        if (gap > static_cast<double>(max_gap_s)) {
            segments.push_back(std::move(seg));
            seg = UniformSeries{};
            seg.start_t = cur.t;
            seg.rate_hz = rate_hz;
            seg.values.push_back(cur.value);
            seg.flags.push_back(cur.flags);
            continue;
        }
        for (long long k = 1; k < steps; ++k) {
            const double frac = static_cast<double>(k) * dt / gap;
            seg.values.push_back(prev.value + frac * (cur.value - prev.value));
            seg.flags.push_back(kInterpolated);
        }
        seg.values.push_back(cur.value);
        seg.flags.push_back(cur.flags);
    }
    segments.push_back(std::move(seg));
    return segments;
}

}  // namespace aqts
