#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aqts/error.hpp"
#include "aqts/ingest.hpp"
#include "aqts/report.hpp"
#include "aqts/synth.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw aqts::Error(aqts::ErrorCode::kIoError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw aqts::Error(aqts::ErrorCode::kIoError, "cannot write '" + path + "'");
    out << content;
    if (!out) throw aqts::Error(aqts::ErrorCode::kIoError, "write failed for '" + path + "'");
}

std::string series_to_csv(const aqts::UniformSeries& s) {
    std::string out = "epoch_s,ppm\n";
    char buf[80];
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.17g\n", s.time_at(k), s.values[k]);
        out += buf;
    }
    return out;
}

struct CommonFlags {
    aqts::PipelineConfig config;
    std::string decimate_mode = "extremes";
    std::string formats = "json";
    std::string window;
};

void add_pipeline_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--input", f.config.input_path, "Input CSV (epoch_s,adc or epoch_s,ppm)")
        ->required();
    cmd->add_option("--calib", f.config.calib_path, "Calibration JSON (needed for ADC input)");
    cmd->add_option("--rate", f.config.rate_hz, "Input sample rate in Hz");
    cmd->add_option("--max-gap", f.config.max_gap_s, "Max gap (s) to interpolate across");
    cmd->add_option("--decimate", f.config.decimate_factor, "Decimation factor");
    cmd->add_option("--decimate-mode", f.decimate_mode, "extremes | mean");
    cmd->add_option("--ar-order", f.config.ar_order, "AR model order");
    cmd->add_option("--drm-bins", f.config.drm_bins, "DRM bin count");
    cmd->add_option("--psd-window", f.config.psd_window_s, "Spectral window length (s)");
    cmd->add_option("--psd-step", f.config.psd_step_s, "Spectral window stride (s)");
    cmd->add_option("--f-min", f.config.f_min, "Dominant-peak frequency floor (Hz)");
    cmd->add_option("--min-prominence", f.config.min_prominence, "Peak/median prominence gate");
    cmd->add_option("--hist-bins", f.config.histogram_bins, "Histogram bin count");
    cmd->add_option("--avg-windows", f.config.averaging_windows_s,
                    "Averaging-invariance window lengths (s)");
    cmd->add_option("--window", f.window, "Time filter FROM..TO in epoch seconds");
    cmd->add_option("--format", f.formats, "Comma-separated output formats: json,csv,svg");
    cmd->add_option("--out", f.config.out_dir, "Output directory");
}

void finish_config(CommonFlags& f) {
    if (f.decimate_mode == "extremes") {
        f.config.decimate_mode = aqts::DecimateMode::kExtremes;
    } else if (f.decimate_mode == "mean") {
        f.config.decimate_mode = aqts::DecimateMode::kMean;
    } else {
        throw aqts::Error(aqts::ErrorCode::kConfigError,
                          "--decimate-mode must be 'extremes' or 'mean'");
    }
    f.config.formats.clear();
    std::stringstream ss(f.formats);
    std::string fmt;
    while (std::getline(ss, fmt, ',')) {
        if (fmt != "json" && fmt != "csv" && fmt != "svg") {
            throw aqts::Error(aqts::ErrorCode::kUnknownFormat, "format '" + fmt + "'");
        }
        f.config.formats.insert(fmt);
    }
    if (!f.window.empty()) {
        const auto sep = f.window.find("..");
        if (sep == std::string::npos) {
            throw aqts::Error(aqts::ErrorCode::kConfigError, "--window expects FROM..TO");
        }
        try {
            f.config.time_window = {std::stod(f.window.substr(0, sep)),
                                    std::stod(f.window.substr(sep + 2))};
        } catch (...) {
            throw aqts::Error(aqts::ErrorCode::kConfigError, "--window expects numeric FROM..TO");
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"High-frequency pollution time-series analysis"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic ppm CSV");
    std::string synth_kind = "lognormal_ar1";
    std::string synth_spec_path;
    double phi = 0.77, phi_high = 0.3, mu = 1.0, sigma = 0.5, q = 0.7;
    double period_s = 90.0, amplitude = 0.0;
    std::size_t n = 3600;
    double rate = 1.0;
    std::uint64_t seed = 1;
    std::string synth_out = "synth.csv";
    synth->add_option("--kind", synth_kind,
                      "ar1 | lognormal_ar1 | sine_mix | one_over_f | threshold_ar");
    synth->add_option("--spec", synth_spec_path, "JSON SynthSpec file (overrides other flags)");
    synth->add_option("--phi", phi, "AR coefficient (phi_low for threshold_ar)");
    synth->add_option("--phi-high", phi_high, "Upper-regime AR coefficient (threshold_ar)");
    synth->add_option("--mu", mu, "Log-mean (lognormal_ar1)");
    synth->add_option("--sigma", sigma, "Innovation sigma or sigma_log");
    synth->add_option("--q", q, "Threshold quantile (threshold_ar)");
    synth->add_option("--period", period_s, "Sinusoid period (s, sine_mix)");
    synth->add_option("--amplitude", amplitude, "Sinusoid amplitude (sine_mix)");
    synth->add_option("--n", n, "Sample count");
    synth->add_option("--rate", rate, "Sample rate (Hz)");
    synth->add_option("--seed", seed, "PRNG seed");
    synth->add_option("--out", synth_out, "Output CSV path");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run the full analysis pipeline");
    CommonFlags an;
    add_pipeline_flags(analyze, an);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Calibrate and regularize raw logs");
    std::string in_input, in_calib, in_out = ".";
    double in_rate = 1.0;
    int in_max_gap = 5;
    ingest->add_option("--input", in_input, "Input CSV")->required();
    ingest->add_option("--calib", in_calib, "Calibration JSON");
    ingest->add_option("--rate", in_rate, "Sample rate (Hz)");
    ingest->add_option("--max-gap", in_max_gap, "Max gap (s) to interpolate across");
    ingest->add_option("--out", in_out, "Output directory");

    // report (re-emit from an existing report.json)
    auto* report_cmd = app.add_subcommand("report", "Re-emit files from a report.json");
    std::string rep_input, rep_format = "svg", rep_out = ".";
    report_cmd->add_option("--input", rep_input, "Existing report.json")->required();
    report_cmd->add_option("--format", rep_format, "json | csv | svg");
    report_cmd->add_option("--out", rep_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (synth->parsed()) {
        aqts::SynthSpec spec;
        if (!synth_spec_path.empty()) {
            spec = aqts::synth_spec_from_json(read_file(synth_spec_path));
        } else {
            if (synth_kind == "ar1") {
                spec.kind = aqts::SynthSpec::Kind::kAr1;
            } else if (synth_kind == "lognormal_ar1") {
                spec.kind = aqts::SynthSpec::Kind::kLognormalAr1;
            } else if (synth_kind == "sine_mix") {
                spec.kind = aqts::SynthSpec::Kind::kSineMix;
                spec.background = std::make_shared<aqts::SynthSpec>();
                spec.background->kind = aqts::SynthSpec::Kind::kLognormalAr1;
                spec.background->phi = phi;
                spec.background->mu = mu;
                spec.background->sigma = sigma;
                spec.background->n = n;
                spec.background->rate_hz = rate;
                spec.background->seed = seed;
            } else if (synth_kind == "one_over_f") {
                spec.kind = aqts::SynthSpec::Kind::kOneOverF;
            } else if (synth_kind == "threshold_ar") {
                spec.kind = aqts::SynthSpec::Kind::kThresholdAr;
            } else {
                throw aqts::Error(aqts::ErrorCode::kConfigError,
                                  "unknown --kind '" + synth_kind + "'");
            }
            spec.phi = phi;
            spec.phi_high = phi_high;
            spec.mu = mu;
            spec.sigma = sigma;
            spec.quantile_q = q;
            spec.period_s = period_s;
            spec.amplitude = amplitude;
            spec.n = n;
            spec.rate_hz = rate;
            spec.seed = seed;
        }
        write_file(synth_out, series_to_csv(aqts::generate(spec)));
        std::cout << synth_out << "\n";
        return 0;
    }

    if (analyze->parsed()) {
        finish_config(an);
        const aqts::Report report = aqts::run_pipeline(an.config);
        for (const std::string& fmt : an.config.formats) {
            for (const std::string& path : aqts::emit_report(report, fmt, an.config.out_dir)) {
                std::cout << path << "\n";
            }
        }
        return 0;
    }

    if (ingest->parsed()) {
        const std::string input = read_file(in_input);
        std::vector<aqts::TimedValue> samples;
        const std::string_view first(input.data(), std::min(input.find('\n'), input.size()));
        if (first == "epoch_s,adc" || first == "epoch_s,adc\r") {
            if (in_calib.empty()) {
                throw aqts::Error(aqts::ErrorCode::kConfigError, "raw ADC input needs --calib");
            }
            const auto curve = aqts::load_calibration(read_file(in_calib));
            samples = aqts::apply_calibration(aqts::parse_records(input), curve);
        } else {
            samples = aqts::parse_ppm_records(input);
        }
        const auto segments = aqts::regularize(samples, in_rate, in_max_gap);
        std::error_code ec;
        fs::create_directories(in_out, ec);
        if (ec) throw aqts::Error(aqts::ErrorCode::kIoError, "cannot create '" + in_out + "'");
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const std::string path =
                (fs::path(in_out) / ("seg" + std::to_string(i) + ".csv")).string();
            write_file(path, series_to_csv(segments[i]));
            std::cout << path << "\n";
        }
        return 0;
    }

    // report
    aqts::Report report;
    try {
        report.doc = nlohmann::ordered_json::parse(read_file(rep_input));
    } catch (const nlohmann::json::exception& e) {
        throw aqts::Error(aqts::ErrorCode::kMalformedLine,
                          std::string("report JSON: ") + e.what());
    }
    for (const std::string& path : aqts::emit_report(report, rep_format, rep_out)) {
        std::cout << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const aqts::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: INTERNAL: " << e.what() << "\n";
        return 1;
    }
}
