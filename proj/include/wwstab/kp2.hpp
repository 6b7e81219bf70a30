#pragma once

#include <vector>

#include "wwstab/operator_matrix.hpp"
#include "wwstab/quantize.hpp"
#include "wwstab/soliton.hpp"
#include "wwstab/symbols.hpp"

namespace wwstab {

/// Linearized KP-II operator about the line KdV soliton, in the exponentially
/// transformed frame: (d/dx - a_hat)(1 - (d/dx - a_hat)^2/3 - 3 psi_kdv .)
/// + eta^2 (d/dx - a_hat)^{-1}, dense in the coefficient representation.
struct KpOperator {
  Mat matrix;
  Grid1D grid;
  double eta = 0.0;
  double a_hat = 0.0;
};

inline KpOperator assemble_kp(double eta, double a_hat, const Grid1D& g) {
  if (!(a_hat > 0.0 && a_hat < std::sqrt(3.0) / 4.0))
    throw std::invalid_argument("assemble_kp: a_hat must lie in (0, sqrt(3)/4)");
  const std::size_t n = g.N;
  RealVec psi(n);
  for (std::size_t j = 0; j < n; ++j) psi(j) = psi_kdv(g.x(j));
  Mat D = deriv_shift_matrix(g, a_hat);
  Mat Psi = mult_matrix(g, psi);
  Mat M = Mat::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex d(-a_hat, g.xi(k));
    M(k, k) = d - d * d * d / 3.0 + eta * eta / d;
  }
  KpOperator out;
  out.grid = g;
  out.eta = eta;
  out.a_hat = a_hat;
  out.matrix = M - 3.0 * (D * Psi);
  return out;
}

namespace kpdetail {

// x-tilde derivatives of e^{-nu x~} sech(x~) (for the mode) and of
// e^{+nu x~} sech(x~) (for the dual), in closed form
inline Complex mode_core(Complex nu, double xt) {
  double s = sech(xt), t = std::tanh(xt);
  return std::exp(-nu * xt) * s * (nu * nu + 2.0 * nu * t + 2.0 * t * t - 1.0);
}
inline Complex dual_core(Complex nu_bar, double xt) {
  double s = sech(xt), t = std::tanh(xt);
  return std::exp(nu_bar * xt) * s * (nu_bar - t);
}

inline void require_admissible(double eta, double a_hat) {
  Complex nu = std::sqrt(Complex(1.0, 4.0 * eta / 3.0));
  if (!(nu.real() - 1.0 < (2.0 / std::sqrt(3.0)) * a_hat * 0.9))
    throw std::invalid_argument("kp modes: |eta| too large, mode growth exceeds the weight");
}

}  // namespace kpdetail

/// Resonant mode of the transformed operator, sampled, with its eigenvalue
/// taken as the Rayleigh quotient of the assembled matrix (the printed
/// eigenvalue prefactor is not used). Untransformed profiles are multiplied
/// by e^{+-a_hat x}; normalization is fixed by the eta -> 0 limits of the
/// even/odd basis combinations.
struct KpModes {
  Vec g0, g0_star;  // coefficient vectors
  Complex lambda_kp;
};

inline KpModes explicit_modes(double eta, double a_hat, const Grid1D& g) {
  kpdetail::require_admissible(eta, a_hat);
  if (eta == 0.0) throw std::invalid_argument("explicit_modes: use kp_basis at eta = 0");
  const std::size_t n = g.N;
  Complex nu = std::sqrt(Complex(1.0, 4.0 * eta / 3.0));
  Complex nu_bar = std::sqrt(Complex(1.0, -4.0 * eta / 3.0));
  Vec m(n), d(n);
  const double c_mode = -std::sqrt(3.0) / 4.0;
  for (std::size_t j = 0; j < n; ++j) {
    double xt = 0.5 * std::sqrt(3.0) * g.x(j);
    double w = std::exp(a_hat * g.x(j));
    m(j) = c_mode * w / nu * kpdetail::mode_core(nu, xt);
    d(j) = Complex(0.0, 3.0 / (8.0 * eta)) / w * kpdetail::dual_core(nu_bar, xt);
  }
  KpModes out;
  out.g0 = g.to_coeffs(m);
  out.g0_star = g.to_coeffs(d);
  KpOperator L = assemble_kp(eta, a_hat, g);
  out.lambda_kp = out.g0.dot(L.matrix * out.g0) / out.g0.squaredNorm();
  return out;
}

/// Basis and dual basis of the resonant pair. Even/odd combinations of the
/// explicit modes with normalization constants frozen so the eta -> 0 limits
/// are exactly v0', -v0'/sqrt(3) - phi10/2, -(sqrt(3)/4) int phi10 and
/// -(sqrt(3)/2) v0 (all carried to the transformed frame).
struct KpBasis {
  Vec g01, g02, g01s, g02s;  // coefficient vectors
};

inline KpBasis kp_basis(double eta, double a_hat, const Grid1D& g) {
  const std::size_t n = g.N;
  KpBasis out;
  if (eta == 0.0) {
    Vec b1(n), b2(n), d1(n), d2(n);
    for (std::size_t j = 0; j < n; ++j) {
      double x = g.x(j);
      double w = std::exp(a_hat * x);
      double v0 = psi_kdv(x), v0p = psi_kdv_prime(x);
      double phi10 = 2.0 * v0 + x * v0p;
      double iphi10 = (2.0 / std::sqrt(3.0)) * (1.0 + std::tanh(0.5 * std::sqrt(3.0) * x)) + x * v0;
      b1(j) = w * v0p;
      b2(j) = w * (-v0p / std::sqrt(3.0) - 0.5 * phi10);
      d1(j) = -(std::sqrt(3.0) / 4.0) * iphi10 / w;
      d2(j) = -(std::sqrt(3.0) / 2.0) * v0 / w;
    }
    out.g01 = g.to_coeffs(b1);
    out.g02 = g.to_coeffs(b2);
    out.g01s = g.to_coeffs(d1);
    out.g02s = g.to_coeffs(d2);
    return out;
  }
  kpdetail::require_admissible(eta, a_hat);
  Complex nu_p = std::sqrt(Complex(1.0, 4.0 * eta / 3.0));
  Complex nu_m = std::sqrt(Complex(1.0, -4.0 * eta / 3.0));
  const double c1 = -std::sqrt(3.0) / 4.0, c2 = -3.0 / 8.0;
  const double c1s = -2.0, c2s = -4.0 / std::sqrt(3.0);
  Vec b1(n), b2(n), d1(n), d2(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = g.x(j);
    double xt = 0.5 * std::sqrt(3.0) * x;
    double w = std::exp(a_hat * x);
    Complex gp = kpdetail::mode_core(nu_p, xt) / nu_p;
    Complex gm = kpdetail::mode_core(nu_m, xt) / nu_m;
    Complex sp = Complex(0.0, 3.0 / (8.0 * eta)) * kpdetail::dual_core(nu_m, xt);
    Complex sm = Complex(0.0, -3.0 / (8.0 * eta)) * kpdetail::dual_core(nu_p, xt);
    b1(j) = c1 * w * (gp + gm);
    b2(j) = c2 * w * (gp - gm) / Complex(0.0, eta);
    d1(j) = c1s * 0.5 * (sp + sm) / w;
    d2(j) = c2s * (eta / Complex(0.0, 2.0)) * (sp - sm) / w;
  }
  out.g01 = g.to_coeffs(b1);
  out.g02 = g.to_coeffs(b2);
  out.g01s = g.to_coeffs(d1);
  out.g02s = g.to_coeffs(d2);
  return out;
}

/// Rank-2 projector onto the resonant pair at one eta (plain L2 pairing,
/// duals renormalized so the Gram is exactly the identity).
inline Mat kp_projector(double eta, double a_hat, const Grid1D& g) {
  KpBasis B = kp_basis(eta, a_hat, g);
  double vol = 2.0 * g.X;
  Eigen::Matrix2cd gram;
  gram(0, 0) = vol * B.g01s.dot(B.g01);
  gram(0, 1) = vol * B.g02s.dot(B.g01);
  gram(1, 0) = vol * B.g01s.dot(B.g02);
  gram(1, 1) = vol * B.g02s.dot(B.g02);
  Eigen::Matrix2cd C = gram.transpose().inverse();
  Vec d1 = C(0, 0) * B.g01s + C(0, 1) * B.g02s;
  Vec d2 = C(1, 0) * B.g01s + C(1, 1) * B.g02s;
  return vol * (B.g01 * d1.adjoint() + B.g02 * d2.adjoint());
}

struct KpResolventReport {
  std::vector<Complex> lambdas;
  std::vector<double> norms;
  double sup_norm = 0.0;
  Complex worst_lambda;
};

/// Resolvent norms of (2 Lambda - L_KP^a) off the resonant pair: smallest
/// singular value of the operator with the resonant directions neutralized
/// (stiffly weighted projector), per Lambda.
inline KpResolventReport kp_resolvent_bound(const std::vector<Complex>& lambda_grid, double eta,
                                            double a_hat, const Grid1D& g, bool project = true) {
  KpOperator L = assemble_kp(eta, a_hat, g);
  const std::size_t n = g.N;
  Mat Q = Mat::Identity(n, n);
  Mat P = Mat::Zero(n, n);
  if (project) {
    P = kp_projector(eta, a_hat, g);
    Q -= P;
  }
  KpResolventReport rep;
  for (Complex lam : lambda_grid) {
    Mat B = Q * (2.0 * lam * Mat::Identity(n, n) - L.matrix) * Q + 100.0 * P;
    double smin = sigma_min_weighted(B);
    double nrm = smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
    rep.lambdas.push_back(lam);
    rep.norms.push_back(nrm);
    if (nrm > rep.sup_norm) {
      rep.sup_norm = nrm;
      rep.worst_lambda = lam;
    }
  }
  return rep;
}

}  // namespace wwstab
