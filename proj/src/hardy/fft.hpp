#pragma once

#include <complex>
#include <vector>

namespace tadecay::detail {

// In-place complex DFT, sign -1 (forward) or +1 (backward, unnormalized).
void fft(std::vector<std::complex<double>>& x, int sign);

std::size_t next_pow2(std::size_t n);

} // namespace tadecay::detail
