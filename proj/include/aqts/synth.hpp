#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "aqts/series.hpp"

namespace aqts {

// Seeded synthetic-signal generators. Every generator is a pure function of
// (params, seed) with bit-identical output across runs and platforms; they are
// the verification oracles for the analysis modules.

struct SynthSpec {
    enum class Kind { kAr1, kLognormalAr1, kSineMix, kOneOverF, kThresholdAr };

    Kind kind = Kind::kAr1;
    double phi = 0.0;       // ar1 / lognormal_ar1; phi_low for threshold_ar
    double phi_high = 0.0;  // threshold_ar only
    double mu = 0.0;        // lognormal_ar1 log-mean
    double sigma = 1.0;     // innovation sigma (ar1, threshold_ar) or sigma_log
    double quantile_q = 0.7;
    double period_s = 0.0;   // sine_mix
    double amplitude = 0.0;  // sine_mix
    std::shared_ptr<SynthSpec> background;  // sine_mix background signal
    std::size_t n = 0;
    double rate_hz = 1.0;
    std::uint64_t seed = 0;
};

UniformSeries generate(const SynthSpec& spec);

std::string synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& json_text);

// Gaussian AR(1) started from its stationary distribution (no burn-in bias).
UniformSeries gen_ar1(double phi, double sigma, std::size_t n, std::uint64_t seed,
                      double rate_hz = 1.0);

// exp(mu + z_t) with z_t a Gaussian AR(1) path rescaled to stationary standard
// deviation sigma_log; matches the lognormal marginal + AR dynamics findings.
UniformSeries gen_lognormal_ar1(double phi, double mu, double sigma_log, std::size_t n,
                                std::uint64_t seed, double rate_hz = 1.0);

// background + amplitude * sin(2*pi*t / period_s), t in seconds from start.
UniformSeries gen_sine_mix(double period_s, double amplitude, const SynthSpec& background);

// 1/f (pink) noise via spectral synthesis: amplitude proportional to 1/sqrt(f)
// per positive-frequency bin, independent random phases, zeroed DC.
UniformSeries gen_one_over_f(std::size_t n, double rate_hz, std::uint64_t seed);

// Two-regime AR: coefficient phi_low below the running q-quantile of the
// realized path, phi_high above; the threshold freezes after a warm-up of
// min(n/10, 1000) samples.
UniformSeries gen_threshold_ar(double phi_low, double phi_high, double quantile_q, double sigma,
                               std::size_t n, std::uint64_t seed, double rate_hz = 1.0);

}  // namespace aqts
