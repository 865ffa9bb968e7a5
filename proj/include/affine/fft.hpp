#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace affine {

// In-place unnormalized DFT over a row-major array with d axes.
// forward: sum x_m e^{-2 pi i l m / n}; backward uses e^{+...}.
void dft(std::vector<std::complex<double>>& a, int d, const std::int64_t* n, bool forward);

const char* fftVersion();

}  // namespace affine
