#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "wwstab/complexmath.hpp"

namespace wwstab {

namespace detail {

inline const std::vector<Complex>& twiddle_table(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<std::vector<Complex>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<std::vector<Complex>>(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      double ang = -2.0 * pi() * static_cast<double>(j) / static_cast<double>(n);
      (*slot)[j] = Complex(std::cos(ang), std::sin(ang));
    }
  }
  return *slot;
}

}  // namespace detail

/// In-place radix-2 FFT. sign=-1: X_k = sum_j x_j e^{-2pi i jk/n}; sign=+1 the
/// conjugate transform (no 1/n factor either way). n must be a power of two.
inline void fft_radix2(Complex* a, std::size_t n, int sign) {
  if (n < 2) return;
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& w = detail::twiddle_table(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex tw = w[j * step];
        if (sign > 0) tw = std::conj(tw);
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * tw;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace wwstab
