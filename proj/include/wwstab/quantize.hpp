#pragma once

#include <functional>

#include "wwstab/grid.hpp"
#include "wwstab/operator_matrix.hpp"

namespace wwstab {

/// Fourier multiplier m(xi) as a diagonal coefficient-space matrix.
inline Mat multiplier_matrix(const Grid1D& g, const std::function<Complex(double)>& m) {
  Mat A = Mat::Zero(g.N, g.N);
  for (std::size_t k = 0; k < g.N; ++k) A(k, k) = m(g.xi(k));
  return A;
}

inline Vec apply_multiplier(const Grid1D& g, const std::function<Complex(double)>& m, const Vec& f) {
  Vec c = g.to_coeffs(f);
  for (std::size_t k = 0; k < g.N; ++k) c(k) *= m(g.xi(k));
  return g.to_samples(c);
}

/// Standard (left) quantization of a symbol b(x, xi) on the periodic grid:
/// transform, multiply by b(x_j, xi_k) pointwise, sum over modes at each x_j.
/// Returned in the coefficient representation.
inline Mat quantize(const Grid1D& g, const std::function<Complex(double, double)>& b) {
  const std::size_t n = g.N;
  Mat cols(n, n);  // column k = samples of b(., xi_k) e^{i xi_k .}
  for (std::size_t k = 0; k < n; ++k) {
    double xi = g.xi(k);
    for (std::size_t j = 0; j < n; ++j) {
      double x = g.x(j);
      cols(j, k) = b(x, xi) * std::exp(Complex(0.0, xi * x));
    }
  }
  g.to_coeffs_inplace(cols);
  return cols;
}

/// Multiplication by a sampled function, as a coefficient-space matrix.
inline Mat mult_matrix(const Grid1D& g, const RealVec& samples) {
  const std::size_t n = g.N;
  Mat cols(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double xi = g.xi(k);
    for (std::size_t j = 0; j < n; ++j)
      cols(j, k) = samples(j) * std::exp(Complex(0.0, xi * g.x(j)));
  }
  g.to_coeffs_inplace(cols);
  return cols;
}

/// d/dx - a as a diagonal multiplier.
inline Mat deriv_shift_matrix(const Grid1D& g, double a) {
  return multiplier_matrix(g, [a](double xi) { return Complex(-a, xi); });
}

}  // namespace wwstab
