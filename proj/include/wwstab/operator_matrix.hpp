#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>
#include <stdexcept>

#include "wwstab/grid.hpp"
#include "wwstab/params.hpp"

namespace wwstab {

enum class NormKind { L2, Hhalf_star, H1 };

/// Norm tag: which function-space norm a matrix axis carries, together with
/// the transverse frequency and weight rate the norm depends on.
struct NormTag {
  NormKind kind = NormKind::L2;
  double eta = 0.0;
  double a = 0.0;
};

/// Diagonal Fourier weight realizing the tagged norm on coefficient vectors.
inline double norm_weight(const NormTag& t, double xi) {
  double r2 = xi * xi + t.eta * t.eta;
  switch (t.kind) {
    case NormKind::L2: return 1.0;
    case NormKind::Hhalf_star: return std::sqrt(r2 / std::sqrt(1.0 + r2) + t.a * t.a);
    case NormKind::H1: return std::sqrt(1.0 + r2);
  }
  return 1.0;
}

inline RealVec norm_weights(const NormTag& t, const Grid1D& g) {
  RealVec w(g.N);
  for (std::size_t k = 0; k < g.N; ++k) w(k) = norm_weight(t, g.xi(k));
  return w;
}

/// Dense operator in the Fourier-coefficient representation: the matrix acts
/// on coefficient vectors c with f = sum_k c_k e^{i xi_k x}. Scalar operators
/// are N x N; block operators on (zeta, phi) pairs are 2N x 2N with the first
/// block L2-tagged and the second carrying src/dst norms.
struct OperatorMatrix {
  Mat entries;
  Grid1D grid;
  NormTag src, dst;
  bool block2 = false;

  std::size_t n() const { return static_cast<std::size_t>(entries.rows()); }
};

inline RealVec stacked_weights(const OperatorMatrix& A, const NormTag& t) {
  if (!A.block2) return norm_weights(t, A.grid);
  RealVec w(2 * A.grid.N);
  w.head(A.grid.N) = norm_weights(NormTag{NormKind::L2, t.eta, t.a}, A.grid);
  w.tail(A.grid.N) = norm_weights(t, A.grid);
  return w;
}

inline Mat weighted_entries(const OperatorMatrix& A) {
  RealVec wd = stacked_weights(A, A.dst);
  RealVec ws = stacked_weights(A, A.src);
  Mat B = A.entries;
  for (Eigen::Index i = 0; i < B.rows(); ++i) B.row(i) *= wd(i);
  for (Eigen::Index j = 0; j < B.cols(); ++j) B.col(j) /= ws(j);
  return B;
}

/// Largest singular value by randomized power iteration on B^H B.
inline double sigma_max_power(const Mat& B, int iters = 20, int restarts = 3,
                              std::uint64_t seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Vec v(B.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(rng), nd(rng));
    v /= v.norm();
    double s = 0.0;
    for (int it = 0; it < iters; ++it) {
      Vec w = B * v;
      s = w.norm();
      v = B.adjoint() * w;
      double n = v.norm();
      if (n == 0.0) break;
      v /= n;
    }
    best = std::max(best, s);
  }
  return best;
}

/// Operator norm in the tagged norms: largest singular value of the weighted
/// matrix. Exact SVD up to 512 rows, randomized power iteration beyond.
inline double operator_norm(const OperatorMatrix& A, std::uint64_t seed = 0x5eed) {
  Mat B = weighted_entries(A);
  if (B.rows() <= 512) {
    Eigen::BDCSVD<Mat> svd(B);
    return svd.singularValues()(0);
  }
  return sigma_max_power(B, 20, 3, seed);
}

/// Smallest singular value of the weighted matrix via inverse iteration on
/// B^H B using one LU factorization of B. Returns 0 on a singular factor.
inline double sigma_min_weighted(const Mat& B, int iters = 40, std::uint64_t seed = 0x5eed) {
  Eigen::PartialPivLU<Mat> lu(B);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vec v(B.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(rng), nd(rng));
  v /= v.norm();
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vec w = lu.adjoint().solve(v);
    Vec u = lu.solve(w);
    double n = u.norm();
    if (!std::isfinite(n) || n == 0.0) return 0.0;
    sigma = 1.0 / std::sqrt(n);
    v = u / n;
  }
  // one Rayleigh refinement: sigma = ||Bv||
  sigma = (B * v).norm();
  return sigma;
}

}  // namespace wwstab
