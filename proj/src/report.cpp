#include "aqts/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aqts/armodel.hpp"
#include "aqts/correlation.hpp"
#include "aqts/detail/svg.hpp"
#include "aqts/distribution.hpp"
#include "aqts/drm.hpp"
#include "aqts/error.hpp"
#include "aqts/ingest.hpp"
#include "aqts/resample.hpp"
#include "aqts/spectral.hpp"
#include "aqts/synth.hpp"

namespace aqts {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ojson skipped(const std::string& reason) {
    ojson j;
    j["skipped"] = true;
    j["reason"] = reason;
    return j;
}

ojson config_echo(const PipelineConfig& c) {
    ojson j;
    j["input"] = c.input_path;
    j["calib"] = c.calib_path;
    j["rate_hz"] = c.rate_hz;
    j["max_gap_s"] = c.max_gap_s;
    j["decimate_factor"] = c.decimate_factor;
    j["decimate_mode"] = c.decimate_mode == DecimateMode::kExtremes ? "extremes" : "mean";
    j["ar_order"] = c.ar_order;
    j["drm_bins"] = c.drm_bins;
    j["psd_window_s"] = c.psd_window_s;
    j["psd_step_s"] = c.psd_step_s;
    j["f_min"] = c.f_min;
    j["min_prominence"] = c.min_prominence;
    j["histogram_bins"] = c.histogram_bins;
    j["averaging_windows_s"] = c.averaging_windows_s;
    if (c.time_window) {
        j["time_window"] = {c.time_window->first, c.time_window->second};
    } else {
        j["time_window"] = nullptr;
    }
    return j;
}

ojson distribution_fragment(const UniformSeries& series, const PipelineConfig& cfg) {
    UniformSeries positive;
    positive.start_t = series.start_t;
    positive.rate_hz = series.rate_hz;
    positive.unit = series.unit;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.values[i] > 0.0) positive.values.push_back(series.values[i]);
    }
    const std::size_t excluded = series.size() - positive.size();
    if (positive.size() < 30) {
        return skipped("non-positive values: " + std::to_string(excluded));
    }

    const LogNormalFit fit = fit_lognormal(positive);
    ojson j;
    j["excluded_nonpositive"] = excluded;
    j["fit"] = {{"mu", fit.mu}, {"sigma", fit.sigma}, {"n", fit.n}};
    if (fit.degenerate) {
        j["ks"] = skipped("degenerate fit");
    } else {
        const KsResult ks = ks_lognormal(positive, fit);
        j["ks"] = {{"d", ks.d_stat}, {"p", ks.p_asymptotic}, {"caveat", "params-estimated"}};
    }
    const Histogram h = histogram(positive, cfg.histogram_bins);
    j["histogram"] = {{"edges", h.edges}, {"counts", h.counts}};

    if (!cfg.averaging_windows_s.empty()) {
        ojson avg = ojson::array();
        for (int w : cfg.averaging_windows_s) {
            try {
                const auto res = averaging_invariance(positive, {w});
                const AveragingResult& r = res.front();
                avg.push_back({{"window_s", r.window_s},
                               {"mu", r.fit.mu},
                               {"sigma", r.fit.sigma},
                               {"d", r.ks.d_stat},
                               {"p", r.ks.p_asymptotic}});
            } catch (const Error& e) {
                avg.push_back({{"window_s", w}, {"skipped", true}, {"reason", e.what()}});
            }
        }
        j["averaging"] = avg;
    }
    return j;
}

ojson correlation_fragment(const UniformSeries& series) {
    const std::size_t max_lag = std::min<std::size_t>(100, series.size() / 2 - 1);
    const CorrelationSequence a = acf(series, max_lag);
    const CorrelationSequence p = pacf(series, max_lag);
    ojson j;
    j["acf"] = a.values;
    j["pacf"] = p.values;
    j["sig_bound"] = 1.96 / std::sqrt(static_cast<double>(a.n));
    j["first_insig_lag"] = first_insignificant_lag(a);
    return j;
}

ojson ar_fragment(const UniformSeries& series, const PipelineConfig& cfg) {
    const ArModel model = fit_ar(series, cfg.ar_order);
    ojson j;
    j["order"] = model.order;
    j["a0"] = model.a0;
    j["coeffs"] = model.coeffs;
    j["noise_var"] = model.noise_var;
    return j;
}

ojson drm_fragment(const UniformSeries& series, const PipelineConfig& cfg) {
    const DrmResult drm = compute_drm(series, cfg.ar_order, cfg.drm_bins);
    ojson bins = ojson::array();
    for (std::size_t b = 0; b < drm.bin_centers.size(); ++b) {
        bins.push_back({{"center", drm.bin_centers[b]},
                        {"mean_r", drm.mean_residual[b]},
                        {"stderr", drm.stderr_[b]},
                        {"count", drm.counts[b]}});
    }
    ojson j;
    j["bins"] = bins;
    j["binning"] = drm.binning == DrmBinning::kEqualCount ? "equal_count" : "equal_width";
    return j;
}

ojson spectral_fragment(const UniformSeries& series) {
    const Spectrum spec = periodogram(series, WindowFn::kHann);
    ojson j;
    j["psd"] = {{"freqs", spec.freqs}, {"power", spec.power}};
    try {
        const PowerLawFit fit = fit_one_over_f(spec, spec.freqs.front(), spec.freqs.back());
        j["one_over_f"] = {{"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"band", {spec.freqs.front(), spec.freqs.back()}}};
    } catch (const Error& e) {
        j["one_over_f"] = skipped(e.what());
    }
    return j;
}

ojson track_fragment(const UniformSeries& series, const PipelineConfig& cfg) {
    const auto track =
        dominant_track(series, cfg.psd_window_s, cfg.psd_step_s, cfg.f_min, cfg.min_prominence);
    ojson j = ojson::array();
    for (const TrackPoint& pt : track) {
        if (pt.peak) {
            j.push_back({{"t", pt.window_start_t},
                         {"freq", pt.peak->freq},
                         {"period", pt.peak->period},
                         {"prominence", pt.peak->prominence_ratio}});
        } else {
            j.push_back({{"t", pt.window_start_t}, {"peak", nullptr}});
        }
    }
    return j;
}

template <typename Fn>
ojson guarded(const std::string& step, std::size_t segment, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return skipped("segment " + std::to_string(segment) + " " + step + ": " + e.what());
    }
}

}  // namespace

std::string tool_version() { return "0.1.0"; }

Report run_pipeline(const PipelineConfig& config) {
    const std::string input = read_file(config.input_path);

    // Sniff the header to decide between raw ADC and pre-calibrated ppm input.
    std::vector<TimedValue> samples;
    const std::string_view first_line(input.data(), std::min(input.find('\n'), input.size()));
    if (first_line == "epoch_s,adc" || first_line == "epoch_s,adc\r") {
        if (config.calib_path.empty()) {
            throw Error(ErrorCode::kConfigError, "raw ADC input needs --calib");
        }
        const CalibrationCurve curve = load_calibration(read_file(config.calib_path));
        samples = apply_calibration(parse_records(input), curve);
    } else {
        samples = parse_ppm_records(input);
    }

    if (config.time_window) {
        std::erase_if(samples, [&](const TimedValue& s) {
            return s.t < config.time_window->first || s.t >= config.time_window->second;
        });
        if (samples.empty()) {
            throw Error(ErrorCode::kEmptyInput, "time window excludes every sample");
        }
    }

    const auto segments = regularize(samples, config.rate_hz, config.max_gap_s);

    Report report;
    report.doc["meta"] = {{"tool", "aqts"},
                          {"version", tool_version()},
                          {"input_digest", fnv1a64_hex(input)},
                          {"config", config_echo(config)}};

    ojson seg_array = ojson::array();
    for (std::size_t si = 0; si < segments.size(); ++si) {
        UniformSeries analysis = segments[si];
        if (config.decimate_factor > 1 &&
            static_cast<std::size_t>(config.decimate_factor) <= analysis.size()) {
            analysis = config.decimate_mode == DecimateMode::kExtremes
                           ? decimate_extremes(analysis, config.decimate_factor)
                           : block_average(analysis, config.decimate_factor);
        }

        ojson seg;
        seg["start_t"] = analysis.start_t;
        seg["rate_hz"] = analysis.rate_hz;
        seg["n"] = analysis.size();
        seg["distribution"] =
            guarded("distribution", si, [&] { return distribution_fragment(analysis, config); });
        seg["correlation"] =
            guarded("correlation", si, [&] { return correlation_fragment(analysis); });
        seg["ar"] = guarded("ar", si, [&] { return ar_fragment(analysis, config); });
        seg["drm"] = guarded("drm", si, [&] { return drm_fragment(analysis, config); });
        seg["spectral"] = guarded("spectral", si, [&] { return spectral_fragment(analysis); });
        seg["track"] = guarded("track", si, [&] { return track_fragment(analysis, config); });
        seg_array.push_back(seg);

        report.analysis_series.push_back(std::move(analysis));
    }
    report.doc["segments"] = seg_array;
    return report;
}

namespace {

std::string csv_series(const UniformSeries& s) {
    std::string out = "epoch_s,ppm,flags\n";
    char buf[96];
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%u\n", s.time_at(k), s.values[k],
                      static_cast<unsigned>(s.flag_at(k)));
        out += buf;
    }
    return out;
}

std::string csv_from_columns(const std::vector<std::string>& headers,
                             const std::vector<std::vector<double>>& cols) {
    std::string out;
    for (std::size_t i = 0; i < headers.size(); ++i) {
        out += headers[i];
        out += (i + 1 < headers.size()) ? ',' : '\n';
    }
    const std::size_t rows = cols.empty() ? 0 : cols.front().size();
    char buf[48];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.10g", cols[c][r]);
            out += buf;
            out += (c + 1 < cols.size()) ? ',' : '\n';
        }
    }
    return out;
}

void emit_csv_segment(const ojson& seg, const UniformSeries* series, const std::string& prefix,
                      std::vector<std::string>& written) {
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(prefix + name, content);
        written.push_back(prefix + name);
    };

    if (series != nullptr) emit("series.csv", csv_series(*series));

    const auto& corr = seg.at("correlation");
    if (!corr.value("skipped", false)) {
        const auto a = corr.at("acf").get<std::vector<double>>();
        const auto p = corr.at("pacf").get<std::vector<double>>();
        std::vector<double> lags(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) lags[k] = static_cast<double>(k);
        emit("acf.csv", csv_from_columns({"lag", "acf", "pacf"}, {lags, a, p}));
    }

    const auto& dist = seg.at("distribution");
    if (!dist.value("skipped", false)) {
        const auto edges = dist.at("histogram").at("edges").get<std::vector<double>>();
        const auto counts = dist.at("histogram").at("counts").get<std::vector<double>>();
        std::vector<double> lo(edges.begin(), edges.end() - 1);
        std::vector<double> hi(edges.begin() + 1, edges.end());
        emit("histogram.csv", csv_from_columns({"bin_lo", "bin_hi", "count"}, {lo, hi, counts}));
    }

    const auto& drm = seg.at("drm");
    if (!drm.value("skipped", false)) {
        std::vector<double> center, mean_r, se, count;
        for (const auto& b : drm.at("bins")) {
            center.push_back(b.at("center").get<double>());
            mean_r.push_back(b.at("mean_r").get<double>());
            se.push_back(b.at("stderr").get<double>());
            count.push_back(b.at("count").get<double>());
        }
        emit("drm.csv", csv_from_columns({"center", "mean_r", "stderr", "count"},
                                         {center, mean_r, se, count}));
    }

    const auto& spec = seg.at("spectral");
    if (!spec.value("skipped", false)) {
        emit("psd.csv",
             csv_from_columns({"freq_hz", "power"},
                              {spec.at("psd").at("freqs").get<std::vector<double>>(),
                               spec.at("psd").at("power").get<std::vector<double>>()}));
    }

    const auto& track = seg.at("track");
    if (track.is_array()) {
        std::vector<double> t, freq, period, prom;
        for (const auto& rec : track) {
            t.push_back(rec.at("t").get<double>());
            const bool has_peak = rec.contains("period");
            freq.push_back(has_peak ? rec.at("freq").get<double>() : 0.0);
            period.push_back(has_peak ? rec.at("period").get<double>() : 0.0);
            prom.push_back(has_peak ? rec.at("prominence").get<double>() : 0.0);
        }
        emit("track.csv", csv_from_columns({"t", "freq_hz", "period_s", "prominence"},
                                           {t, freq, period, prom}));
    }
}

void emit_svg_segment(const ojson& seg, const UniformSeries* series, const std::string& prefix,
                      std::vector<std::string>& written) {
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(prefix + name, content);
        written.push_back(prefix + name);
    };
    if (series != nullptr) {
        emit("timeseries.svg", detail::svg_timeseries(*series, "Concentration time series"));
    } else {
        emit("timeseries.svg", detail::svg_timeseries(UniformSeries{}, "Concentration time series"));
    }
    emit("histogram.svg", detail::svg_histogram(seg.at("distribution"), "Concentration histogram"));
    emit("correlogram.svg", detail::svg_correlogram(seg.at("correlation"), "ACF / PACF"));
    emit("drm.svg", detail::svg_drm(seg.at("drm"), "Delayed residual map"));
    emit("psd.svg", detail::svg_psd_loglog(seg.at("spectral"), "Power spectral density"));
    emit("track.svg", detail::svg_track(seg.at("track"), "Dominant-frequency track"));
}

}  // namespace

std::vector<std::string> emit_report(const Report& report, const std::string& format,
                                     const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + out_dir + "'");

    std::vector<std::string> written;
    if (format == "json") {
        const std::string path = (fs::path(out_dir) / "report.json").string();
        write_file(path, report.doc.dump(2) + "\n");
        written.push_back(path);
        return written;
    }

    const auto& segments = report.doc.at("segments");
    if (format == "csv" || format == "svg") {
        for (std::size_t si = 0; si < segments.size(); ++si) {
            const UniformSeries* series =
                si < report.analysis_series.size() ? &report.analysis_series[si] : nullptr;
            const std::string prefix =
                (fs::path(out_dir) / ("seg" + std::to_string(si) + "_")).string();
            if (format == "csv") {
                emit_csv_segment(segments[si], series, prefix, written);
            } else {
                emit_svg_segment(segments[si], series, prefix, written);
            }
        }
        return written;
    }
    throw Error(ErrorCode::kUnknownFormat, "format '" + format + "'");
}

}  // namespace aqts
