#pragma once

#include <functional>

#include "wwstab/regions.hpp"
#include "wwstab/waveop.hpp"

namespace wwstab {

enum class EnergyBand { s, r };

struct EnergyResult {
  double value = 0.0;
  double dissipation = 0.0;
};

namespace energydetail {

/// Hermitian form matrix of the band functional on stacked coefficients,
/// scaled so E = (1/2) u^H M u equals the integral functional.
inline Mat energy_form(EnergyBand band, double eta, const Params& p, const SolitonProfile& prof,
                       const Grid1D& g) {
  const std::size_t n = g.N;
  double a = p.a(), gamma = prof.gamma();
  double vol = 2.0 * g.X;
  Mat M = Mat::Zero(2 * n, 2 * n);
  if (band == EnergyBand::s) {
    for (std::size_t k = 0; k < n; ++k) {
      double xi = g.xi(k);
      M(k, k) = vol * gamma;
      M(n + k, n + k) = vol * (xi * xi + a * a + eta * eta);
    }
    return M;
  }
  for (std::size_t k = 0; k < n; ++k) {
    M(k, k) = vol * gamma;
    M(n + k, n + k) = vol * std::abs(flat_dn_symbol(g.xi(k), eta, a));
  }
  // background-wave term: zeta_c |grad_a Q_a(D) V2|^2, assembled through the
  // sample maps of the two gradient components
  Mat T1(n, n), T2(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double xi = g.xi(k);
    Complex t = tanh_stable(mu_a(xi, eta, a));
    Complex q = branch_sqrt(1.0 - t * t);
    Complex c1 = Complex(-a, xi) * q;
    Complex c2 = Complex(0.0, eta) * q;
    for (std::size_t j = 0; j < n; ++j) {
      Complex e = std::exp(Complex(0.0, xi * g.x(j)));
      T1(j, k) = c1 * e;
      T2(j, k) = c2 * e;
    }
  }
  Eigen::VectorXd zh = prof.zeta_c * g.h();
  Mat Z = zh.asDiagonal().toDenseMatrix().cast<Complex>();
  M.bottomRightCorner(n, n) += T1.adjoint() * Z * T1 + T2.adjoint() * Z * T2;
  return M;
}

}  // namespace energydetail

/// Indicator projection of a stacked coefficient vector onto the band's
/// frequency support (both components).
inline Vec band_project(EnergyBand band, const Vec& u, double eta, const Params& p,
                        const Grid1D& g) {
  Vec out = u;
  for (std::size_t k = 0; k < g.N; ++k) {
    bool keep = band == EnergyBand::s ? in_singular_set(g.xi(k), eta, p)
                                      : in_regular_set(g.xi(k), eta, p);
    if (!keep) {
      out(k) = 0.0;
      out(g.N + k) = 0.0;
    }
  }
  return out;
}

/// Band energy functional and its derivative along the homogeneous evolution
/// du/dt = pi L_a pi u.
inline EnergyResult energy_functionals(const Vec& state, EnergyBand band, const Params& p,
                                       const SolitonProfile& prof, const StripGrid& sg,
                                       double eta, const BlockOperator* assembled = nullptr) {
  const Grid1D& g = sg.x_grid;
  Vec proj = band_project(band, state, eta, p, g);
  if ((proj - state).norm() > 1e-10 * std::max(1.0, state.norm()))
    throw std::invalid_argument("energy_functionals: state not band-limited to the functional");
  Mat M = energydetail::energy_form(band, eta, p, prof, g);
  EnergyResult out;
  out.value = 0.5 * std::real(state.dot(M * state));
  BlockOperator L = assembled ? *assembled : assemble_La(eta, p, prof, sg);
  Vec rate = band_project(band, Vec(L.entries * state), eta, p, g);
  out.dissipation = std::real(state.dot(M * rate));
  return out;
}

struct CommutatorCheck {
  double measured = 0.0;
  double bound = 0.0;
  bool bound_finite = true;
};

/// Operator norm of A [B, f] W for Fourier multipliers A, B, W against the
/// Schur bound C_s C_{f,s} with C_s the sup of |A(xi)(B(xi)-B(xi'))W(xi')| /
/// |xi-xi'|^s over the grid and C_{f,s} the weighted absolute spectrum of f.
inline CommutatorCheck commutator_check(const std::function<Complex(double)>& A,
                                        const std::function<Complex(double)>& B,
                                        const std::function<Complex(double)>& W,
                                        const RealVec& f_samples, double s, const Grid1D& g) {
  const std::size_t n = g.N;
  Vec fc = g.to_coeffs(f_samples.cast<Complex>());
  Mat F = mult_matrix(g, f_samples);
  Mat K(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      K(j, k) = A(g.xi(j)) * (B(g.xi(j)) - B(g.xi(k))) * W(g.xi(k)) * F(j, k);
  OperatorMatrix om;
  om.grid = g;
  om.entries = K;
  CommutatorCheck out;
  out.measured = operator_norm(om);

  double cs = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      double num = std::abs(A(g.xi(j)) * (B(g.xi(j)) - B(g.xi(k))) * W(g.xi(k)));
      double den = s == 0.0 ? 1.0 : std::pow(std::abs(g.xi(j) - g.xi(k)), s);
      cs = std::max(cs, num / den);
    }
  double cfs = 0.0;
  for (std::size_t k = 0; k < n; ++k) cfs += std::pow(std::abs(g.xi(k)), s) * std::abs(fc(k));
  out.bound = cs * cfs;
  out.bound_finite = std::isfinite(out.bound);
  return out;
}

}  // namespace wwstab
