#pragma once

#include <complex>
#include <vector>

namespace oscillab {

// Thin wrappers over FFTW with a process-wide plan cache. Transforms are
// unnormalized: forwardphases e^{-2 pi i jk/n}, inverse e^{+2 pi i jk/n};
// callers apply their own measure factors. Planning is serialized (FFTW's
// planner is not thread-safe); execution is re-entrant.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

} // namespace oscillab
