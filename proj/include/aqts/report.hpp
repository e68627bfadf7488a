#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aqts/series.hpp"

namespace aqts {

enum class DecimateMode { kExtremes, kMean };

struct PipelineConfig {
    std::string input_path;
    std::string calib_path;  // empty when the input is pre-calibrated ppm
    double rate_hz = 1.0;
    int max_gap_s = 5;
    int decimate_factor = 10;
    DecimateMode decimate_mode = DecimateMode::kExtremes;
    std::size_t ar_order = 1;
    std::size_t drm_bins = 7;
    int psd_window_s = 3600;
    int psd_step_s = 1800;
    double f_min = 1.0 / 600.0;
    double min_prominence = 8.0;
    int histogram_bins = 40;
    std::vector<int> averaging_windows_s;
    std::optional<std::pair<double, double>> time_window;  // epoch seconds, [from, to)
    std::string out_dir = ".";
    std::set<std::string> formats{"json"};
};

// Canonical JSON document plus the per-segment analysis series kept around for
// CSV/SVG emission. Identical input and config produce a byte-identical doc.
struct Report {
    nlohmann::ordered_json doc;
    std::vector<UniformSeries> analysis_series;
};

Report run_pipeline(const PipelineConfig& config);

// Emits one format into out_dir; returns the paths written.
std::vector<std::string> emit_report(const Report& report, const std::string& format,
                                     const std::string& out_dir);

std::string tool_version();

}  // namespace aqts
