#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aqts::detail {

// In-place complex FFT, arbitrary length (radix-2 with Bluestein fallback).
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

}  // namespace aqts::detail
