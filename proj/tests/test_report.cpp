#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aqts/error.hpp"
#include "aqts/report.hpp"
#include "aqts/synth.hpp"

using namespace aqts;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_fixture_csv(const fs::path& dir, std::uint64_t seed, std::size_t n = 3600) {
    const auto s = gen_lognormal_ar1(0.77, 1.0, 0.5, n, seed);
    std::string csv = "epoch_s,ppm\n";
    char buf[80];
    for (std::size_t k = 0; k < s.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.17g\n", s.time_at(k), s.values[k]);
        csv += buf;
    }
    const std::string path = (dir / "fixture.csv").string();
    std::ofstream(path, std::ios::binary) << csv;
    return path;
}

PipelineConfig fixture_config(const std::string& input, const std::string& out) {
    PipelineConfig cfg;
    cfg.input_path = input;
    cfg.out_dir = out;
    cfg.decimate_factor = 1;
    cfg.psd_window_s = 1800;
    cfg.psd_step_s = 900;
    return cfg;
}

}  // namespace

TEST_CASE("pipeline report contains every fragment key") {
    TempDir tmp("aqts_report_keys");
    const auto input = write_fixture_csv(tmp.path, 1);
    const Report report = run_pipeline(fixture_config(input, tmp.path.string()));

    REQUIRE(report.doc.contains("meta"));
    REQUIRE(report.doc.at("segments").size() == 1);
    const auto& seg = report.doc.at("segments")[0];
    for (const char* key : {"distribution", "correlation", "ar", "drm", "spectral", "track"}) {
        CHECK(seg.contains(key));
    }
    CHECK_FALSE(seg.at("distribution").value("skipped", false));
    CHECK(seg.at("distribution").at("ks").at("caveat") == "params-estimated");
}

TEST_CASE("identical runs produce byte-identical JSON") {
    TempDir tmp("aqts_report_det");
    const auto input = write_fixture_csv(tmp.path, 2);
    const auto cfg = fixture_config(input, tmp.path.string());
    const Report r1 = run_pipeline(cfg);
    const Report r2 = run_pipeline(cfg);
    CHECK(r1.doc.dump(2) == r2.doc.dump(2));
}

TEST_CASE("all-negative input skips the distribution fragment with a reason") {
    TempDir tmp("aqts_report_neg");
    std::string csv = "epoch_s,ppm\n";
    for (int t = 0; t < 400; ++t) {
        csv += std::to_string(t) + "," + (t % 2 == 0 ? "-1.5" : "-0.25") + "\n";
    }
    const std::string input = (tmp.path / "neg.csv").string();
    std::ofstream(input, std::ios::binary) << csv;

    auto cfg = fixture_config(input, tmp.path.string());
    const Report report = run_pipeline(cfg);
    const auto& dist = report.doc.at("segments")[0].at("distribution");
    CHECK(dist.at("skipped") == true);
    CHECK(dist.at("reason") == "non-positive values: 400");
}

TEST_CASE("json format emits exactly report.json") {
    TempDir tmp("aqts_report_json");
    const auto input = write_fixture_csv(tmp.path, 3);
    const Report report = run_pipeline(fixture_config(input, tmp.path.string()));
    const auto files = emit_report(report, "json", (tmp.path / "out").string());
    REQUIRE(files.size() == 1);
    CHECK(fs::path(files[0]).filename() == "report.json");
    CHECK(slurp(files[0]).find("\"meta\"") != std::string::npos);
}

TEST_CASE("svg format emits the six plot files") {
    TempDir tmp("aqts_report_svg");
    const auto input = write_fixture_csv(tmp.path, 4);
    const Report report = run_pipeline(fixture_config(input, tmp.path.string()));
    const auto files = emit_report(report, "svg", (tmp.path / "svg").string());
    REQUIRE(files.size() == 6);
    for (const char* name : {"seg0_timeseries.svg", "seg0_histogram.svg", "seg0_correlogram.svg",
                             "seg0_drm.svg", "seg0_psd.svg", "seg0_track.svg"}) {
        CHECK(fs::exists(tmp.path / "svg" / name));
    }
    CHECK(slurp(files[0]).rfind("<svg", 0) == 0);
}

TEST_CASE("csv emission writes per-fragment tables") {
    TempDir tmp("aqts_report_csv");
    const auto input = write_fixture_csv(tmp.path, 5);
    const Report report = run_pipeline(fixture_config(input, tmp.path.string()));
    const auto files = emit_report(report, "csv", (tmp.path / "csv").string());
    CHECK(files.size() >= 5);
    CHECK(slurp((tmp.path / "csv" / "seg0_acf.csv").string()).rfind("lag,acf,pacf", 0) == 0);
}

TEST_CASE("unknown format is rejected") {
    TempDir tmp("aqts_report_fmt");
    const auto input = write_fixture_csv(tmp.path, 6);
    const Report report = run_pipeline(fixture_config(input, tmp.path.string()));
    try {
        emit_report(report, "pdf", tmp.path.string());
        FAIL("expected UnknownFormat");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kUnknownFormat);
    }
}

TEST_CASE("gap in the input splits analysis into segments") {
    TempDir tmp("aqts_report_gap");
    const auto s = gen_lognormal_ar1(0.5, 1.0, 0.4, 1200, 7);
    std::string csv = "epoch_s,ppm\n";
    char buf[80];
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double t = k < 600 ? static_cast<double>(k) : static_cast<double>(k) + 100.0;
        std::snprintf(buf, sizeof(buf), "%.10g,%.17g\n", t, s.values[k]);
        csv += buf;
    }
    const std::string input = (tmp.path / "gap.csv").string();
    std::ofstream(input, std::ios::binary) << csv;

    auto cfg = fixture_config(input, tmp.path.string());
    const Report report = run_pipeline(cfg);
    CHECK(report.doc.at("segments").size() == 2);
}

TEST_CASE("time window filter restricts the analyzed span") {
    TempDir tmp("aqts_report_win");
    const auto input = write_fixture_csv(tmp.path, 8, 3600);
    auto cfg = fixture_config(input, tmp.path.string());
    cfg.time_window = {{600.0, 1800.0}};
    const Report report = run_pipeline(cfg);
    const auto& seg = report.doc.at("segments")[0];
    CHECK(seg.at("start_t").get<double>() == doctest::Approx(600.0));
    CHECK(seg.at("n").get<std::size_t>() == 1200);
}

TEST_CASE("missing input file raises an I/O error") {
    PipelineConfig cfg;
    cfg.input_path = "/nonexistent/input.csv";
    try {
        run_pipeline(cfg);
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::kIo);
    }
}
