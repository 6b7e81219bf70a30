#pragma once

#include <Eigen/Dense>

#include "wwstab/dn.hpp"
#include "wwstab/quantize.hpp"

namespace wwstab {

/// Discretized linearized operator acting on (zeta, phi) coefficient pairs,
/// stored as one dense 2N x 2N matrix. `a` is the weight rate of the
/// transformed operator (a = 0 gives the untransformed one).
struct BlockOperator {
  Mat entries;
  Grid1D grid;
  double eta = 0.0;
  double a = 0.0;

  std::size_t n() const { return grid.N; }
};

/// Diagonal weights of the X = L2 x H^{1/2}_* norm on stacked coefficients.
inline RealVec xnorm_weights(const Grid1D& g, double eta, double a) {
  RealVec w(2 * g.N);
  NormTag half{NormKind::Hhalf_star, eta, a};
  for (std::size_t k = 0; k < g.N; ++k) {
    w(k) = 1.0;
    w(g.N + k) = norm_weight(half, g.xi(k));
  }
  return w;
}

inline double xnorm(const BlockOperator& L, const Vec& u) {
  RealVec w = xnorm_weights(L.grid, L.eta, L.a);
  double s = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += std::norm(u(i)) * w(i) * w(i);
  return std::sqrt(2.0 * L.grid.X * s);
}

/// Weighted matrix realizing the X-norm: D (lambda I - L) D^{-1}.
inline Mat xnorm_weighted_shifted(const BlockOperator& L, Complex lambda) {
  RealVec w = xnorm_weights(L.grid, L.eta, L.a);
  Mat B = -L.entries;
  B.diagonal().array() += lambda;
  for (Eigen::Index i = 0; i < B.rows(); ++i) B.row(i) *= w(i);
  for (Eigen::Index j = 0; j < B.cols(); ++j) B.col(j) /= w(j);
  return B;
}

inline Mat xnorm_weighted(const BlockOperator& L) {
  RealVec w = xnorm_weights(L.grid, L.eta, L.a);
  Mat B = L.entries;
  for (Eigen::Index i = 0; i < B.rows(); ++i) B.row(i) *= w(i);
  for (Eigen::Index j = 0; j < B.cols(); ++j) B.col(j) /= w(j);
  return B;
}

/// Constant-coefficient operator: blocks [d/dx - a, flat DN; -gamma, d/dx - a].
inline BlockOperator assemble_La0(double eta, double a, double gamma, const Grid1D& g) {
  const std::size_t n = g.N;
  BlockOperator L;
  L.grid = g;
  L.eta = eta;
  L.a = a;
  L.entries = Mat::Zero(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex d(-a, g.xi(k));
    L.entries(k, k) = d;
    L.entries(k, n + k) = flat_dn_symbol(g.xi(k), eta, a);
    L.entries(n + k, k) = -gamma;
    L.entries(n + k, n + k) = d;
  }
  return L;
}

inline BlockOperator assemble_La0(double eta, const Params& p, const Grid1D& g) {
  return assemble_La0(eta, p.a(), p.gamma(), g);
}

/// Variable-coefficient operator with the strip-solver Dirichlet-Neumann
/// matrix in the (1,2) block.
inline BlockOperator assemble_La(double eta, double a, const SolitonProfile& prof,
                                 const StripGrid& sg) {
  const Grid1D& g = sg.x_grid;
  const std::size_t n = g.N;
  BlockOperator L;
  L.grid = g;
  L.eta = eta;
  L.a = a;
  L.entries = Mat::Zero(2 * n, 2 * n);
  Mat Dm = deriv_shift_matrix(g, a);
  Mat Dc = mult_matrix(g, prof.d_c);
  Mat G = prof.flat
              ? multiplier_matrix(g, [&](double xi) { return flat_dn_symbol(xi, eta, a); })
              : StripSolver(prof, sg, a, eta).dn_matrix();
  L.entries.topLeftCorner(n, n) = Dm * Dc;
  L.entries.topRightCorner(n, n) = G;
  L.entries.bottomLeftCorner(n, n) = -mult_matrix(g, prof.w_c);
  L.entries.bottomRightCorner(n, n) = Dc * Dm;
  return L;
}

inline BlockOperator assemble_La(double eta, const Params& p, const SolitonProfile& prof,
                                 const StripGrid& sg) {
  return assemble_La(eta, p.a(), prof, sg);
}

/// Closed-form inverse of (Id - L_a^0) per Fourier mode. The off-diagonal
/// products of square roots are resolved so that the result is the true
/// matrix inverse: the (1,2) entry is +lambda0/det.
inline Eigen::Matrix2cd inverse1_la0(double xi, double eta, double a, double gamma) {
  Complex lam0 = flat_dn_symbol(xi, eta, a);
  Complex s = 1.0 - Complex(-a, xi);
  Complex det = s * s + gamma * lam0;
  Eigen::Matrix2cd M;
  M << s / det, lam0 / det, -gamma / det, s / det;
  return M;
}

struct DiagonalizerResult {
  Mat P1, P2;      // operator-valued 2x2 arrays, coefficient rep
  double residual; // ||P2 P1 - Id|| in B(L2 x L2)
};

/// Symbol diagonalizers of the modified operator on |eta| >= 2, built from
/// the quantized g_eta and 1/g_eta.
inline DiagonalizerResult diagonalizers(double eta, const Params& p, const SolitonProfile& prof,
                                        const Grid1D& g) {
  if (std::abs(eta) < 2.0)
    throw std::invalid_argument("diagonalizers: |eta| must be >= 2 (g_eta may be unbounded)");
  const std::size_t n = g.N;
  Mat Og = quantize(g, [&](double x, double xi) { return g_eta_symbol(x, xi, eta, p, prof); });
  Mat Oginv =
      quantize(g, [&](double x, double xi) { return 1.0 / g_eta_symbol(x, xi, eta, p, prof); });
  DiagonalizerResult out;
  out.P1 = Mat::Zero(2 * n, 2 * n);
  out.P2 = Mat::Zero(2 * n, 2 * n);
  Mat id = Mat::Identity(n, n);
  out.P1.topLeftCorner(n, n) = id;
  out.P1.topRightCorner(n, n) = id;
  out.P1.bottomLeftCorner(n, n) = Og;
  out.P1.bottomRightCorner(n, n) = -Og;
  out.P2.topLeftCorner(n, n) = 0.5 * id;
  out.P2.topRightCorner(n, n) = 0.5 * Oginv;
  out.P2.bottomLeftCorner(n, n) = 0.5 * id;
  out.P2.bottomRightCorner(n, n) = -0.5 * Oginv;
  Mat defect = out.P2 * out.P1 - Mat::Identity(2 * n, 2 * n);
  out.residual = defect.rows() <= 1024 ? Eigen::BDCSVD<Mat>(defect).singularValues()(0)
                                       : sigma_max_power(defect);
  return out;
}

}  // namespace wwstab
