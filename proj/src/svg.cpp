#include "aqts/detail/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace aqts::detail {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Canvas {
    std::string body;
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;

    void set_range(double xl, double xh, double yl, double yh) {
        if (xh <= xl) xh = xl + 1.0;
        if (yh <= yl) yh = yl + 1.0;
        x_lo = xl;
        x_hi = xh;
        y_lo = yl;
        y_hi = yh;
    }

    double px(double x) const {
        return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2.0 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2.0 * kMargin);
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              const std::string& extra = "") {
        body += "<line x1=\"" + fmt(px(x1)) + "\" y1=\"" + fmt(py(y1)) + "\" x2=\"" +
                fmt(px(x2)) + "\" y2=\"" + fmt(py(y2)) + "\" stroke=\"" + stroke + "\"" + extra +
                "/>\n";
    }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& stroke) {
        body += "<polyline fill=\"none\" stroke=\"" + stroke + "\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            body += fmt(px(xs[i])) + "," + fmt(py(ys[i])) + " ";
        }
        body += "\"/>\n";
    }

    void circle(double x, double y, double r, const std::string& fill) {
        body += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" + fmt(r) +
                "\" fill=\"" + fill + "\"/>\n";
    }

    void rect(double x1, double x2, double y1, double y2, const std::string& fill) {
        const double rx = px(x1);
        const double ry = py(y2);
        body += "<rect x=\"" + fmt(rx) + "\" y=\"" + fmt(ry) + "\" width=\"" +
                fmt(px(x2) - rx) + "\" height=\"" + fmt(py(y1) - ry) + "\" fill=\"" + fill +
                "\" stroke=\"#333\"/>\n";
    }

    void axes(const std::string& x_label, const std::string& y_label) {
        body += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kHeight - kMargin) + "\" x2=\"" +
                fmt(kWidth - kMargin) + "\" y2=\"" + fmt(kHeight - kMargin) +
                "\" stroke=\"black\"/>\n";
        body += "<line x1=\"" + fmt(kMargin) + "\" y1=\"" + fmt(kMargin) + "\" x2=\"" +
                fmt(kMargin) + "\" y2=\"" + fmt(kHeight - kMargin) + "\" stroke=\"black\"/>\n";
        body += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 15.0) +
                "\" text-anchor=\"middle\" font-size=\"13\">" + x_label + "</text>\n";
        body += "<text x=\"18\" y=\"" + fmt(kHeight / 2) +
                "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
                fmt(kHeight / 2) + ")\">" + y_label + "</text>\n";
        // range labels at the corners
        body += "<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(kHeight - kMargin + 16.0) +
                "\" font-size=\"11\">" + fmt(x_lo) + "</text>\n";
        body += "<text x=\"" + fmt(kWidth - kMargin) + "\" y=\"" +
                fmt(kHeight - kMargin + 16.0) + "\" text-anchor=\"end\" font-size=\"11\">" +
                fmt(x_hi) + "</text>\n";
        body += "<text x=\"" + fmt(kMargin - 4.0) + "\" y=\"" + fmt(kHeight - kMargin) +
                "\" text-anchor=\"end\" font-size=\"11\">" + fmt(y_lo) + "</text>\n";
        body += "<text x=\"" + fmt(kMargin - 4.0) + "\" y=\"" + fmt(kMargin + 4.0) +
                "\" text-anchor=\"end\" font-size=\"11\">" + fmt(y_hi) + "</text>\n";
    }

    std::string finish(const std::string& title) const {
        std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                          fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
        out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kWidth) + "\" height=\"" + fmt(kHeight) +
               "\" fill=\"white\"/>\n";
        out += "<text x=\"" + fmt(kWidth / 2) +
               "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" + title + "</text>\n";
        out += body;
        out += "</svg>\n";
        return out;
    }
};

std::string skipped_svg(const std::string& title, const std::string& reason) {
    Canvas c;
    c.body += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight / 2) +
              "\" text-anchor=\"middle\" font-size=\"14\" fill=\"#888\">skipped: " + reason +
              "</text>\n";
    return c.finish(title);
}

bool fragment_skipped(const nlohmann::ordered_json& fragment, std::string& reason) {
    if (fragment.is_object() && fragment.value("skipped", false)) {
        reason = fragment.value("reason", "unknown");
        return true;
    }
    return false;
}

}  // namespace

std::string svg_timeseries(const UniformSeries& series, const std::string& title) {
    Canvas c;
    if (series.values.empty()) return skipped_svg(title, "empty series");
    auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
    c.set_range(series.start_t, series.time_at(series.size() - 1), *mn, *mx);

    // cap polyline size for very long series
    const std::size_t stride = std::max<std::size_t>(1, series.size() / 4000);
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < series.size(); k += stride) {
        xs.push_back(series.time_at(k));
        ys.push_back(series.values[k]);
    }
    c.polyline(xs, ys, "#1f77b4");
    c.axes("epoch (s)", "concentration");
    return c.finish(title);
}

std::string svg_histogram(const nlohmann::ordered_json& fragment, const std::string& title) {
    std::string reason;
    if (fragment_skipped(fragment, reason)) return skipped_svg(title, reason);
    const auto& h = fragment.at("histogram");
    const auto edges = h.at("edges").get<std::vector<double>>();
    const auto counts = h.at("counts").get<std::vector<double>>();
    if (edges.size() < 2) return skipped_svg(title, "empty histogram");

    Canvas c;
    const double max_count = *std::max_element(counts.begin(), counts.end());
    c.set_range(edges.front(), edges.back(), 0.0, max_count);
    for (std::size_t b = 0; b < counts.size(); ++b) {
        c.rect(edges[b], edges[b + 1], 0.0, counts[b], "#9ecae1");
    }
    c.axes("concentration (ppm)", "count");
    return c.finish(title);
}

std::string svg_correlogram(const nlohmann::ordered_json& fragment, const std::string& title) {
    std::string reason;
    if (fragment_skipped(fragment, reason)) return skipped_svg(title, reason);
    const auto acf = fragment.at("acf").get<std::vector<double>>();
    const auto pacf = fragment.at("pacf").get<std::vector<double>>();
    const double bound = fragment.at("sig_bound").get<double>();

    Canvas c;
    c.set_range(0.0, static_cast<double>(acf.size() - 1), -1.0, 1.0);
    c.line(0.0, 0.0, static_cast<double>(acf.size() - 1), 0.0, "#999");
    c.line(0.0, bound, static_cast<double>(acf.size() - 1), bound, "#d62728",
           " stroke-dasharray=\"4 3\"");
    c.line(0.0, -bound, static_cast<double>(acf.size() - 1), -bound, "#d62728",
           " stroke-dasharray=\"4 3\"");
    for (std::size_t k = 0; k < acf.size(); ++k) {
        c.line(static_cast<double>(k), 0.0, static_cast<double>(k), acf[k], "#1f77b4");
        c.circle(static_cast<double>(k), acf[k], 2.5, "#1f77b4");
    }
    for (std::size_t k = 0; k < pacf.size(); ++k) {
        c.circle(static_cast<double>(k), pacf[k], 2.0, "#ff7f0e");
    }
    c.axes("lag", "correlation");
    return c.finish(title);
}

std::string svg_drm(const nlohmann::ordered_json& fragment, const std::string& title) {
    std::string reason;
    if (fragment_skipped(fragment, reason)) return skipped_svg(title, reason);
    const auto& bins = fragment.at("bins");

    std::vector<double> xs, ys, es;
    for (const auto& b : bins) {
        xs.push_back(b.at("center").get<double>());
        ys.push_back(b.at("mean_r").get<double>());
        es.push_back(b.at("stderr").get<double>());
    }
    if (xs.empty()) return skipped_svg(title, "no bins");

    double ylo = std::numeric_limits<double>::max();
    double yhi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < ys.size(); ++i) {
        ylo = std::min(ylo, ys[i] - 2.0 * es[i]);
        yhi = std::max(yhi, ys[i] + 2.0 * es[i]);
    }
    Canvas c;
    c.set_range(*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end()),
                ylo, yhi);
    c.line(c.x_lo, 0.0, c.x_hi, 0.0, "#999");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        c.line(xs[i], ys[i] - es[i], xs[i], ys[i] + es[i], "#2ca02c");
        c.circle(xs[i], ys[i], 3.5, "#2ca02c");
    }
    c.axes("x_t", "mean residual r_{t+1}");
    return c.finish(title);
}

std::string svg_psd_loglog(const nlohmann::ordered_json& fragment, const std::string& title) {
    std::string reason;
    if (fragment_skipped(fragment, reason)) return skipped_svg(title, reason);
    const auto freqs = fragment.at("psd").at("freqs").get<std::vector<double>>();
    const auto power = fragment.at("psd").at("power").get<std::vector<double>>();

    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (freqs[k] > 0.0 && power[k] > 0.0) {
            xs.push_back(std::log10(freqs[k]));
            ys.push_back(std::log10(power[k]));
        }
    }
    if (xs.empty()) return skipped_svg(title, "no positive power");

    Canvas c;
    c.set_range(*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end()),
                *std::min_element(ys.begin(), ys.end()), *std::max_element(ys.begin(), ys.end()));
    c.polyline(xs, ys, "#1f77b4");
    if (fragment.contains("one_over_f") && !fragment["one_over_f"].is_null()) {
        const double slope = fragment["one_over_f"].at("slope").get<double>();
        const double intercept = fragment["one_over_f"].at("intercept").get<double>();
        c.line(c.x_lo, intercept + slope * c.x_lo, c.x_hi, intercept + slope * c.x_hi, "#d62728");
    }
    c.axes("log10 frequency (Hz)", "log10 power");
    return c.finish(title);
}

std::string svg_track(const nlohmann::ordered_json& fragment, const std::string& title) {
    std::string reason;
    if (fragment_skipped(fragment, reason)) return skipped_svg(title, reason);

    std::vector<double> ts, periods;
    double t_lo = std::numeric_limits<double>::max();
    double t_hi = std::numeric_limits<double>::lowest();
    for (const auto& rec : fragment) {
        const double t = rec.at("t").get<double>();
        t_lo = std::min(t_lo, t);
        t_hi = std::max(t_hi, t);
        if (rec.contains("period")) {
            ts.push_back(t);
            periods.push_back(rec.at("period").get<double>());
        }
    }
    if (fragment.empty()) return skipped_svg(title, "no windows");

    Canvas c;
    const double p_hi = periods.empty() ? 1.0 : *std::max_element(periods.begin(), periods.end());
    c.set_range(t_lo, t_hi, 0.0, p_hi * 1.1);
    for (std::size_t i = 0; i < ts.size(); ++i) c.circle(ts[i], periods[i], 3.0, "#1f77b4");
    c.axes("window start (epoch s)", "dominant period (s)");
    return c.finish(title);
}

}  // namespace aqts::detail
