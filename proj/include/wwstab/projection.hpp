#pragma once

#include <vector>

#include "wwstab/modes.hpp"

namespace wwstab {

/// Pairing weight on stacked coefficients for the dual bracket: plain L2 on
/// the first component, |(xi, eta)|^2 / <(xi, eta)> on the second.
inline RealVec bracket_weights(const Grid1D& g, double eta) {
  RealVec w(2 * g.N);
  for (std::size_t k = 0; k < g.N; ++k) {
    double r2 = g.xi(k) * g.xi(k) + eta * eta;
    w(k) = 1.0;
    w(g.N + k) = r2 / std::sqrt(1.0 + r2);
  }
  return w;
}

/// Dual bracket of stacked coefficient vectors.
inline Complex bracket_ya(const Vec& f, const Vec& gstar, const Grid1D& g, double eta) {
  RealVec w = bracket_weights(g, eta);
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += w(i) * f(i) * std::conj(gstar(i));
  return 2.0 * g.X * s;
}

inline Vec reflect_samples(const Grid1D& g, const Vec& f) {
  Vec out(g.N);
  for (std::size_t j = 0; j < g.N; ++j) out(j) = f((g.N - j) % g.N);
  return out;
}

/// U*(., eta) = (U2, U1)^t(-., -eta) built from the mode at +eta using the
/// conjugation symmetry U(., -eta) = conj U(., eta).
inline Vec dual_mode(const Grid1D& g, const Vec& mode_coeffs) {
  const std::size_t n = g.N;
  Vec top = g.to_samples(Vec(mode_coeffs.head(n)));
  Vec bot = g.to_samples(Vec(mode_coeffs.tail(n)));
  Vec out(2 * n);
  out.head(n) = g.to_coeffs(reflect_samples(g, bot.conjugate()));
  out.tail(n) = g.to_coeffs(reflect_samples(g, top.conjugate()));
  return out;
}

struct EtaBasis {
  double eta = 0.0;
  Vec g1, g2, g1s, g2s;  // basis and (renormalized) dual basis, coefficients
  double alpha = 0.0;
  double kappa = 0.0;
  double renorm_defect = 0.0;  // ||Gram - Id|| before renormalization
  Mat P;                       // rank-2 projector on stacked coefficients
};

struct ProjectorPair {
  double eta0 = 0.0;
  Grid1D grid;
  std::vector<EtaBasis> bands;
};

namespace detail {

inline Vec real_part_coeffs(const Grid1D& g, const Vec& coeffs2n) {
  const std::size_t n = g.N;
  Vec top = g.to_samples(Vec(coeffs2n.head(n)));
  Vec bot = g.to_samples(Vec(coeffs2n.tail(n)));
  Vec out(2 * n);
  out.head(n) = g.to_coeffs(top.real().cast<Complex>());
  out.tail(n) = g.to_coeffs(bot.real().cast<Complex>());
  return out;
}

inline Vec imag_part_coeffs(const Grid1D& g, const Vec& coeffs2n) {
  const std::size_t n = g.N;
  Vec top = g.to_samples(Vec(coeffs2n.head(n)));
  Vec bot = g.to_samples(Vec(coeffs2n.tail(n)));
  Vec out(2 * n);
  out.head(n) = g.to_coeffs(top.imag().cast<Complex>());
  out.tail(n) = g.to_coeffs(bot.imag().cast<Complex>());
  return out;
}

}  // namespace detail

/// Basis / dual basis at one transverse frequency from the traced mode, with
/// the dual pair renormalized so the discrete bracket Gram is exactly the
/// identity (the applied correction is recorded).
inline EtaBasis make_eta_basis(const Grid1D& g, double eta, const Vec& mode) {
  if (eta == 0.0) throw std::invalid_argument("make_eta_basis: eta must be nonzero");
  EtaBasis B;
  B.eta = eta;
  Vec Ustar = dual_mode(g, mode);
  Complex ip = bracket_ya(mode, Ustar, g, eta);
  if (std::abs(ip.imag()) < 1e-14 * std::abs(ip))
    throw std::runtime_error("make_eta_basis: degenerate mode pairing at eta = " +
                             std::to_string(eta));
  B.alpha = ip.real() / ip.imag();
  B.kappa = -std::sqrt(3.0) / 8.0 * (ip.imag() + ip.real() * ip.real() / ip.imag());

  Vec reU = detail::real_part_coeffs(g, mode), imU = detail::imag_part_coeffs(g, mode);
  Vec reUs = detail::real_part_coeffs(g, Ustar), imUs = detail::imag_part_coeffs(g, Ustar);
  B.g1 = reU - B.alpha * imU;
  B.g2 = (imU + B.alpha * reU) / B.kappa;
  // even/odd combinations of the dual pair g* = -(sqrt(3)/4) U*
  B.g1s = std::sqrt(3.0) / (4.0 * B.kappa) * imUs;
  B.g2s = -std::sqrt(3.0) / 4.0 * reUs;

  Eigen::Matrix2cd gram;
  gram(0, 0) = bracket_ya(B.g1, B.g1s, g, eta);
  gram(0, 1) = bracket_ya(B.g1, B.g2s, g, eta);
  gram(1, 0) = bracket_ya(B.g2, B.g1s, g, eta);
  gram(1, 1) = bracket_ya(B.g2, B.g2s, g, eta);
  B.renorm_defect = (gram - Eigen::Matrix2cd::Identity()).norm();
  // duals g~*_k = sum_m C_km g*_m with C = Gram^{-T} enforce delta_jk exactly
  Eigen::Matrix2cd C = gram.transpose().inverse();
  Vec g1s_new = C(0, 0) * B.g1s + C(0, 1) * B.g2s;
  Vec g2s_new = C(1, 0) * B.g1s + C(1, 1) * B.g2s;
  B.g1s = g1s_new;
  B.g2s = g2s_new;

  // rank-2 oblique projector: P f = sum_k <f, g~*_k> g_k
  RealVec w = bracket_weights(g, eta);
  const std::size_t m = 2 * g.N;
  Mat rows(2, m);
  for (std::size_t i = 0; i < m; ++i) {
    rows(0, i) = 2.0 * g.X * w(i) * std::conj(B.g1s(i));
    rows(1, i) = 2.0 * g.X * w(i) * std::conj(B.g2s(i));
  }
  B.P = B.g1 * rows.row(0) + B.g2 * rows.row(1);
  return B;
}

/// Rank-2 spectral projector onto the resonant pair {lambda, conj(lambda)}
/// with the left eigenvectors refined by adjoint shift-invert iteration, so
/// the complement is invariant to solver precision. Used where resonant
/// leakage must stay at roundoff (semigroup runs); the formula-built bases
/// above realize the documented construction.
inline Mat refined_pair_projector(const Mat& L, Complex lambda, const Vec& right_mode,
                                  const Grid1D& g) {
  EigPair left = shift_invert(Mat(L.adjoint()), std::conj(lambda), dual_mode(g, right_mode));
  EigPair right = shift_invert(L, lambda, right_mode);
  Vec u = right.vector;
  Vec l = left.vector;
  Complex pairing = l.dot(u);
  if (std::abs(pairing) < 1e-12)
    throw std::runtime_error("refined_pair_projector: degenerate left/right pairing");
  Mat P = u * (l / std::conj(pairing)).adjoint();
  // conjugate partner
  const std::size_t n = g.N;
  auto conj_vec = [&](const Vec& v) {
    Vec top = g.to_samples(Vec(v.head(n))), bot = g.to_samples(Vec(v.tail(n)));
    Vec out(2 * n);
    out.head(n) = g.to_coeffs(top.conjugate());
    out.tail(n) = g.to_coeffs(bot.conjugate());
    return out;
  };
  Vec uc = conj_vec(u), lc = conj_vec(l);
  Complex pc = lc.dot(uc);
  P += uc * (lc / std::conj(pc)).adjoint();
  return P;
}

/// Per-frequency projectors onto the resonant pair over the band
/// 0 < |eta| <= eta0, built from the traced curve.
inline ProjectorPair spectral_projection(double eta0, const ModeCurve& curve, const Params& p,
                                         const Grid1D& g) {
  ProjectorPair out;
  out.eta0 = eta0;
  out.grid = g;
  for (std::size_t i = 0; i < curve.etas.size(); ++i) {
    double eta = curve.etas[i];
    if (eta <= 0.0 || eta > eta0 * (1.0 + 1e-12)) continue;
    out.bands.push_back(make_eta_basis(g, eta, curve.modes[i]));
  }
  if (out.bands.empty())
    throw std::invalid_argument("spectral_projection: no curve samples in (0, eta0]");
  return out;
}

}  // namespace wwstab
