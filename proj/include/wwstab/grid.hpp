#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "wwstab/complexmath.hpp"
#include "wwstab/fft.hpp"

namespace wwstab {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

/// Symmetric periodic grid on [-X, X): x_j = -X + j*h, h = 2X/N, N a power of
/// two. Fourier coefficients are indexed in FFT order; coefficient k multiplies
/// exp(i*xi_k*x) with xi_k = pi*k_signed/X.
struct Grid1D {
  double X = 0.0;
  std::size_t N = 0;

  Grid1D() = default;
  Grid1D(double half_length, std::size_t points) : X(half_length), N(points) {
    if (N == 0 || (N & (N - 1)) != 0) throw std::invalid_argument("Grid1D: N must be a power of two");
    if (!(X > 0.0)) throw std::invalid_argument("Grid1D: X must be positive");
  }

  double h() const { return 2.0 * X / static_cast<double>(N); }
  double x(std::size_t j) const { return -X + static_cast<double>(j) * h(); }

  long k_signed(std::size_t k) const {
    return k < N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
  }
  double xi(std::size_t k) const { return pi() * static_cast<double>(k_signed(k)) / X; }

  RealVec xs() const {
    RealVec v(N);
    for (std::size_t j = 0; j < N; ++j) v(j) = x(j);
    return v;
  }
  RealVec xis() const {
    RealVec v(N);
    for (std::size_t k = 0; k < N; ++k) v(k) = xi(k);
    return v;
  }

  /// samples -> Fourier coefficients (c_k such that f_j = sum_k c_k e^{i xi_k x_j})
  Vec to_coeffs(const Vec& f) const {
    Vec c = f;
    fft_radix2(c.data(), N, -1);
    double inv = 1.0 / static_cast<double>(N);
    for (std::size_t k = 0; k < N; ++k) c(k) *= (k % 2 == 0 ? inv : -inv);
    return c;
  }

  /// Fourier coefficients -> samples
  Vec to_samples(const Vec& c) const {
    Vec f = c;
    for (std::size_t k = 0; k < N; ++k)
      if (k % 2 == 1) f(k) = -f(k);
    fft_radix2(f.data(), N, +1);
    return f;
  }

  void to_coeffs_inplace(Eigen::Ref<Mat> cols) const {
    double inv = 1.0 / static_cast<double>(N);
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      fft_radix2(cols.col(c).data(), N, -1);
      for (std::size_t k = 0; k < N; ++k) cols(k, c) *= (k % 2 == 0 ? inv : -inv);
    }
  }
  void to_samples_inplace(Eigen::Ref<Mat> cols) const {
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      for (std::size_t k = 1; k < N; k += 2) cols(k, c) = -cols(k, c);
      fft_radix2(cols.col(c).data(), N, +1);
    }
  }

  /// discrete L2 norm: h * sum |f_j|^2
  double l2_norm(const Vec& f) const { return std::sqrt(h() * f.squaredNorm()); }

  /// spectral derivative of sampled data
  Vec derivative(const Vec& f) const {
    Vec c = to_coeffs(f);
    for (std::size_t k = 0; k < N; ++k) c(k) *= Complex(0.0, xi(k));
    return to_samples(c);
  }
};

/// Chebyshev-Gauss-Lobatto nodes and collocation machinery on z in [-1, 0].
/// Node 0 is the surface z = 0, node M-1 the bottom z = -1.
struct ChebGrid {
  std::size_t M = 0;
  RealVec z;           // nodes
  Eigen::MatrixXd Dz;  // differentiation matrix
  RealVec w;           // Clenshaw-Curtis quadrature weights on [-1, 0]

  explicit ChebGrid(std::size_t points) : M(points) {
    if (M < 2) throw std::invalid_argument("ChebGrid: need at least 2 points");
    const std::size_t n = M - 1;  // polynomial degree
    RealVec t(M);
    for (std::size_t m = 0; m < M; ++m) t(m) = std::cos(pi() * static_cast<double>(m) / static_cast<double>(n));
    z = (t.array() - 1.0) / 2.0;

    Eigen::MatrixXd D(M, M);
    auto cc = [&](std::size_t i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
    for (std::size_t i = 0; i < M; ++i) {
      double rowsum = 0.0;
      for (std::size_t j = 0; j < M; ++j) {
        if (i != j) {
          double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          D(i, j) = (cc(i) / cc(j)) * sgn / (t(i) - t(j));
          rowsum += D(i, j);
        }
      }
      D(i, i) = -rowsum;  // negative sum trick
    }
    Dz = 2.0 * D;  // d/dz = 2 d/dt

    // Clenshaw-Curtis weights for degree n on [-1,1], halved for the map
    RealVec wt = RealVec::Zero(M);
    for (std::size_t m = 0; m < M; ++m) {
      double s = 1.0;
      for (std::size_t k = 1; k <= n / 2; ++k) {
        double b = (2 * k == n) ? 1.0 : 2.0;
        s -= b * std::cos(2.0 * k * pi() * static_cast<double>(m) / static_cast<double>(n)) /
             (4.0 * k * k - 1.0);
      }
      wt(m) = 2.0 * s / static_cast<double>(n);
      if (m == 0 || m == n) wt(m) /= 2.0;
    }
    w = wt / 2.0;
  }
};

/// Discretization of the flattened fluid strip: periodic line times [-1, 0].
struct StripGrid {
  Grid1D x_grid;
  std::size_t M = 0;

  StripGrid() = default;
  StripGrid(const Grid1D& xg, std::size_t z_points) : x_grid(xg), M(z_points) {
    if (M < 16) throw std::invalid_argument("StripGrid: M must be >= 16");
  }

  ChebGrid cheb() const { return ChebGrid(M); }
};

}  // namespace wwstab
