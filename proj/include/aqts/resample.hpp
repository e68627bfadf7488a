#pragma once

#include "aqts/series.hpp"

namespace aqts {

// Non-overlapping block means; output rate is rate/k, trailing partial block dropped.
UniformSeries block_average(const UniformSeries& series, int k);

// Per block of k, keeps the sample deviating most (in absolute value) from the
// block mean; ties go to the earliest index. Output values are a subset of the
// input values, so spikes survive the rate reduction.
UniformSeries decimate_extremes(const UniformSeries& series, int k);

// Centered moving mean with odd window w; output is shortened by w-1 samples,
// rate unchanged.
UniformSeries moving_average(const UniformSeries& series, int w);

}  // namespace aqts
