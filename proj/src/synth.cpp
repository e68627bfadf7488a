#include "aqts/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

#include "aqts/detail/fft.hpp"
#include "aqts/detail/rng.hpp"
#include "aqts/error.hpp"

namespace aqts {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_stationary(double phi) {
    if (!(std::abs(phi) < 1.0)) {
        throw Error(ErrorCode::kNonStationaryPhi, "|phi| must be < 1, got " + std::to_string(phi));
    }
}

UniformSeries make_series(std::size_t n, double rate_hz) {
    UniformSeries s;
    s.start_t = 0.0;
    s.rate_hz = rate_hz;
    s.unit = Unit::kPpm;
    s.values.resize(n);
    return s;
}

// Linear-interpolation quantile of a sorted sample.
double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

UniformSeries gen_ar1(double phi, double sigma, std::size_t n, std::uint64_t seed,
                      double rate_hz) {
    check_stationary(phi);
    if (sigma < 0.0) throw Error(ErrorCode::kConfigError, "sigma must be >= 0");
    if (n < 1) throw Error(ErrorCode::kConfigError, "n must be >= 1");

    detail::Xoshiro256pp rng(seed);
    UniformSeries s = make_series(n, rate_hz);
    s.values[0] = sigma / std::sqrt(1.0 - phi * phi) * rng.normal();
    for (std::size_t t = 1; t < n; ++t) {
        s.values[t] = phi * s.values[t - 1] + sigma * rng.normal();
    }
    return s;
}

UniformSeries gen_lognormal_ar1(double phi, double mu, double sigma_log, std::size_t n,
                                std::uint64_t seed, double rate_hz) {
    check_stationary(phi);
    if (!(sigma_log > 0.0)) throw Error(ErrorCode::kConfigError, "sigma_log must be > 0");
    // innovation sigma chosen so the stationary std of z equals sigma_log
    UniformSeries s = gen_ar1(phi, sigma_log * std::sqrt(1.0 - phi * phi), n, seed, rate_hz);
    for (double& v : s.values) v = std::exp(mu + v);
    return s;
}

UniformSeries gen_sine_mix(double period_s, double amplitude, const SynthSpec& background) {
    UniformSeries s = generate(background);
    if (!(period_s > 2.0 / s.rate_hz)) {
        throw Error(ErrorCode::kSubNyquistPeriod,
                    "period " + std::to_string(period_s) + " s is at or below the Nyquist bound " +
                        std::to_string(2.0 / s.rate_hz) + " s");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double t = static_cast<double>(k) / s.rate_hz;
        s.values[k] += amplitude * std::sin(2.0 * kPi * t / period_s);
    }
    return s;
}

UniformSeries gen_one_over_f(std::size_t n, double rate_hz, std::uint64_t seed) {
    if (n < 64) throw Error(ErrorCode::kSeriesTooShort, "need n >= 64");

    detail::Xoshiro256pp rng(seed);
    std::vector<std::complex<double>> bins(n, {0.0, 0.0});
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k <= half; ++k) {
        const double f = static_cast<double>(k) * rate_hz / static_cast<double>(n);
        const double amp = 1.0 / std::sqrt(f);
        const double phase = 2.0 * kPi * rng.uniform01();
        if (n % 2 == 0 && k == half) {
            // Nyquist bin must be real for a real series
            bins[k] = {amp * std::cos(phase), 0.0};
        } else {
            bins[k] = std::polar(amp, phase);
            bins[n - k] = std::conj(bins[k]);
        }
    }
    detail::fft(bins, /*inverse=*/true);

    UniformSeries s = make_series(n, rate_hz);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t) s.values[t] = bins[t].real() * inv_n;
    return s;
}

UniformSeries gen_threshold_ar(double phi_low, double phi_high, double quantile_q, double sigma,
                               std::size_t n, std::uint64_t seed, double rate_hz) {
    check_stationary(phi_low);
    check_stationary(phi_high);
    if (!(quantile_q > 0.0 && quantile_q < 1.0)) {
        throw Error(ErrorCode::kConfigError, "quantile_q must be in (0, 1)");
    }
    if (n < 1) throw Error(ErrorCode::kConfigError, "n must be >= 1");

    const std::size_t warmup = std::min<std::size_t>(n / 10, 1000);
    detail::Xoshiro256pp rng(seed);
    UniformSeries s = make_series(n, rate_hz);
    s.values[0] = sigma / std::sqrt(1.0 - phi_low * phi_low) * rng.normal();

    std::vector<double> sorted{s.values[0]};
    double frozen_threshold = s.values[0];
    for (std::size_t t = 1; t < n; ++t) {
        const double threshold =
            (t <= warmup) ? sorted_quantile(sorted, quantile_q) : frozen_threshold;
        const double phi = s.values[t - 1] > threshold ? phi_high : phi_low;
        s.values[t] = phi * s.values[t - 1] + sigma * rng.normal();
        if (t <= warmup) {
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), s.values[t]),
                          s.values[t]);
            frozen_threshold = sorted_quantile(sorted, quantile_q);
        }
    }
    return s;
}

UniformSeries generate(const SynthSpec& spec) {
    switch (spec.kind) {
        case SynthSpec::Kind::kAr1:
            return gen_ar1(spec.phi, spec.sigma, spec.n, spec.seed, spec.rate_hz);
        case SynthSpec::Kind::kLognormalAr1:
            return gen_lognormal_ar1(spec.phi, spec.mu, spec.sigma, spec.n, spec.seed,
                                     spec.rate_hz);
        case SynthSpec::Kind::kSineMix: {
            if (!spec.background) {
                throw Error(ErrorCode::kConfigError, "sine_mix needs a background spec");
            }
            return gen_sine_mix(spec.period_s, spec.amplitude, *spec.background);
        }
        case SynthSpec::Kind::kOneOverF:
            return gen_one_over_f(spec.n, spec.rate_hz, spec.seed);
        case SynthSpec::Kind::kThresholdAr:
            return gen_threshold_ar(spec.phi, spec.phi_high, spec.quantile_q, spec.sigma, spec.n,
                                    spec.seed, spec.rate_hz);
    }
    throw Error(ErrorCode::kConfigError, "unknown synth kind");
}

namespace {

const char* kind_name(SynthSpec::Kind k) {
    switch (k) {
        case SynthSpec::Kind::kAr1: return "ar1";
        case SynthSpec::Kind::kLognormalAr1: return "lognormal_ar1";
        case SynthSpec::Kind::kSineMix: return "sine_mix";
        case SynthSpec::Kind::kOneOverF: return "one_over_f";
        case SynthSpec::Kind::kThresholdAr: return "threshold_ar";
    }
    return "ar1";
}

SynthSpec::Kind kind_from_name(const std::string& name) {
    if (name == "ar1") return SynthSpec::Kind::kAr1;
    if (name == "lognormal_ar1") return SynthSpec::Kind::kLognormalAr1;
    if (name == "sine_mix") return SynthSpec::Kind::kSineMix;
    if (name == "one_over_f") return SynthSpec::Kind::kOneOverF;
    if (name == "threshold_ar") return SynthSpec::Kind::kThresholdAr;
    throw Error(ErrorCode::kConfigError, "unknown synth kind '" + name + "'");
}

nlohmann::ordered_json spec_to_ojson(const SynthSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(spec.kind);
    j["phi"] = spec.phi;
    j["phi_high"] = spec.phi_high;
    j["mu"] = spec.mu;
    j["sigma"] = spec.sigma;
    j["quantile_q"] = spec.quantile_q;
    j["period_s"] = spec.period_s;
    j["amplitude"] = spec.amplitude;
    j["n"] = spec.n;
    j["rate_hz"] = spec.rate_hz;
    j["seed"] = spec.seed;
    if (spec.background) j["background"] = spec_to_ojson(*spec.background);
    return j;
}

SynthSpec spec_from_json(const nlohmann::json& j) {
    SynthSpec spec;
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    spec.phi = j.value("phi", 0.0);
    spec.phi_high = j.value("phi_high", 0.0);
    spec.mu = j.value("mu", 0.0);
    spec.sigma = j.value("sigma", 1.0);
    spec.quantile_q = j.value("quantile_q", 0.7);
    spec.period_s = j.value("period_s", 0.0);
    spec.amplitude = j.value("amplitude", 0.0);
    spec.n = j.value("n", std::size_t{0});
    spec.rate_hz = j.value("rate_hz", 1.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("background")) {
        spec.background = std::make_shared<SynthSpec>(spec_from_json(j["background"]));
    }
    return spec;
}

}  // namespace

std::string synth_spec_to_json(const SynthSpec& spec) { return spec_to_ojson(spec).dump(2); }

SynthSpec synth_spec_from_json(const std::string& json_text) {
    try {
        return spec_from_json(nlohmann::json::parse(json_text));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kConfigError, std::string("synth spec JSON: ") + e.what());
    }
}

}  // namespace aqts
