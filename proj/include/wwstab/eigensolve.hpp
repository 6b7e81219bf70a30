#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <optional>

#include "wwstab/grid.hpp"

namespace wwstab {

struct EigPair {
  Complex lambda;
  Vec vector;
  double residual = 0.0;
  bool converged = false;
};

/// Shift-invert iteration with Rayleigh-quotient refinement. `shift` must be
/// closer to the wanted eigenvalue than to the rest of the spectrum; `start`
/// seeds the iteration.
inline EigPair shift_invert(const Mat& A, Complex shift, const Vec& start, int max_refactor = 4,
                            int inner_iters = 12, double tol = 1e-11) {
  EigPair out;
  Vec v = start;
  v /= v.norm();
  Complex sigma = shift;
  double anorm = A.cwiseAbs().rowwise().sum().maxCoeff();  // cheap infinity-norm scale
  for (int r = 0; r < max_refactor; ++r) {
    Mat B = A;
    B.diagonal().array() -= sigma;
    Eigen::PartialPivLU<Mat> lu(B);
    for (int it = 0; it < inner_iters; ++it) {
      Vec w = lu.solve(v);
      double n = w.norm();
      if (!std::isfinite(n) || n == 0.0) break;
      v = w / n;
      Complex rayleigh = v.dot(A * v);  // Eigen dot conjugates the left argument
      double res = (A * v - rayleigh * v).norm() / anorm;
      if (res < tol) {
        out.lambda = rayleigh;
        out.vector = v;
        out.residual = res;
        out.converged = true;
        return out;
      }
    }
    sigma = v.dot(A * v);
  }
  Complex rayleigh = v.dot(A * v);
  out.lambda = rayleigh;
  out.vector = v;
  out.residual = (A * v - rayleigh * v).norm() / anorm;
  out.converged = out.residual < 1e-8;
  return out;
}

/// Dense eigendecomposition oracle (small matrices only).
inline Eigen::ComplexEigenSolver<Mat> dense_eigs(const Mat& A) {
  return Eigen::ComplexEigenSolver<Mat>(A, true);
}

}  // namespace wwstab
