#pragma once

#include <cstddef>
#include <vector>

#include "aqts/series.hpp"

namespace aqts {

struct CorrelationSequence {
    enum class Kind { kAcf, kPacf };
    Kind kind = Kind::kAcf;
    std::vector<double> values;  // indexed by lag 0..max_lag, values[0] == 1
    std::size_t n = 0;           // source sample count
};

// Biased (divide-by-n) sample autocorrelation. The biased estimator keeps the
// sequence positive semi-definite, which the Durbin-Levinson recursion needs.
CorrelationSequence acf(const UniformSeries& series, std::size_t max_lag);

// Partial autocorrelation via Durbin-Levinson over the sample ACF; values[k]
// is the order-k reflection coefficient, values[0] := 1.
CorrelationSequence pacf(const UniformSeries& series, std::size_t max_lag);

// Smallest lag k >= 1 with |values[k]| < 1.96/sqrt(n); max_lag+1 if none.
std::size_t first_insignificant_lag(const CorrelationSequence& corr);

}  // namespace aqts
