#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace harmext::fft {

/// out[j] = sum_k in[k] exp(sign * 2 pi i j k / n), sign = -1 (forward) or +1
/// (backward). Unnormalized. Backed by FFTW; plans are cached per
/// (size, sign) and created under a lock.
std::vector<std::complex<double>>
transform(std::span<const std::complex<double>> in, int sign);

inline bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

} // namespace harmext::fft
