#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "aqts/series.hpp"

namespace aqts::detail {

// Deterministic SVG renderers (fixed 800x500 viewBox, no external assets).
std::string svg_timeseries(const UniformSeries& series, const std::string& title);
std::string svg_histogram(const nlohmann::ordered_json& fragment, const std::string& title);
std::string svg_correlogram(const nlohmann::ordered_json& fragment, const std::string& title);
std::string svg_drm(const nlohmann::ordered_json& fragment, const std::string& title);
std::string svg_psd_loglog(const nlohmann::ordered_json& fragment, const std::string& title);
std::string svg_track(const nlohmann::ordered_json& fragment, const std::string& title);

}  // namespace aqts::detail
