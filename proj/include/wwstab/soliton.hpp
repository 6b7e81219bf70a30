#pragma once

#include <stdexcept>

#include "wwstab/grid.hpp"
#include "wwstab/params.hpp"

namespace wwstab {

/// sech^2(sqrt(3)/2 x), the unit-speed KdV soliton profile.
inline double psi_kdv(double x) {
  double s = sech(0.5 * std::sqrt(3.0) * x);
  return s * s;
}

inline double psi_kdv_prime(double x) {
  double u = 0.5 * std::sqrt(3.0) * x;
  double s = sech(u);
  return -std::sqrt(3.0) * s * s * std::tanh(u);
}

inline double psi_kdv_second(double x) {
  double u = 0.5 * std::sqrt(3.0) * x;
  double s = sech(u), t = std::tanh(u);
  return 3.0 * s * s * t * t - 1.5 * s * s * s * s;
}

/// Leading-order solitary-wave fields and the coefficients of the linearized
/// operator. Arrays are sampled on `grid`; the pointwise evaluators use the
/// same closed forms and are valid for any x. A profile with `flat` set keeps
/// gamma = 1 - epsilon^2 but zeroes every wave field.
struct SolitonProfile {
  Grid1D grid;
  double epsilon = 0.0;
  bool flat = false;
  RealVec zeta_c, dzeta_c, dphi_c, Z_c, v_c, d_c, w_c;

  double gamma() const { return 1.0 - epsilon * epsilon; }

  double zeta(double x) const { return flat ? 0.0 : epsilon * epsilon * psi_kdv(epsilon * x); }
  double dzeta(double x) const { return flat ? 0.0 : std::pow(epsilon, 3) * psi_kdv_prime(epsilon * x); }
  double dphi(double x) const { return flat ? 0.0 : epsilon * epsilon * psi_kdv(epsilon * x); }
  double Zc(double x) const { return flat ? 0.0 : -std::pow(epsilon, 3) * psi_kdv_prime(epsilon * x); }
  double dZc(double x) const { return flat ? 0.0 : -std::pow(epsilon, 4) * psi_kdv_second(epsilon * x); }
  double vc(double x) const { return dphi(x) - Zc(x) * dzeta(x); }
  double dc(double x) const { return 1.0 - vc(x); }
  double wc(double x) const { return gamma() - dc(x) * dZc(x); }
};

namespace detail {
inline void sample_profile(SolitonProfile& p) {
  const std::size_t n = p.grid.N;
  p.zeta_c.resize(n);
  p.dzeta_c.resize(n);
  p.dphi_c.resize(n);
  p.Z_c.resize(n);
  p.v_c.resize(n);
  p.d_c.resize(n);
  p.w_c.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = p.grid.x(j);
    p.zeta_c(j) = p.zeta(x);
    p.dzeta_c(j) = p.dzeta(x);
    p.dphi_c(j) = p.dphi(x);
    p.Z_c(j) = p.Zc(x);
    p.v_c(j) = p.vc(x);
    p.d_c(j) = p.dc(x);
    p.w_c(j) = p.wc(x);
  }
}
}  // namespace detail

/// Sample the leading-order profile. Requires epsilon*X >= 20 so the periodic
/// truncation stays below 1e-14 (exponential tails).
inline SolitonProfile build_profile(double epsilon, const Grid1D& grid) {
  if (epsilon > 0.0 && epsilon * grid.X < 20.0)
    throw std::invalid_argument("build_profile: epsilon*X < 20, tail truncation too large");
  SolitonProfile p;
  p.grid = grid;
  p.epsilon = epsilon;
  p.flat = (epsilon == 0.0);
  detail::sample_profile(p);
  return p;
}

/// Flat-surface profile: zero wave fields, gamma = 1 - epsilon^2.
inline SolitonProfile zero_profile(const Grid1D& grid, double epsilon = 0.0) {
  SolitonProfile p;
  p.grid = grid;
  p.epsilon = epsilon;
  p.flat = true;
  detail::sample_profile(p);
  return p;
}

struct ProfileNorms {
  double l1_v0 = 0.0;
  double l2sq_v0 = 0.0;
};

/// Quadrature of the rescaled profile v0 = psi_kdv on the scaled grid
/// x_hat = epsilon*x. Trapezoidal on a periodic grid, so spectrally accurate.
inline ProfileNorms profile_norms(double epsilon, const Grid1D& grid) {
  double s = epsilon > 0.0 ? epsilon : 1.0;
  if (s * grid.X < 20.0) throw std::invalid_argument("profile_norms: scaled half-length < 20");
  double hh = s * grid.h();
  ProfileNorms out;
  for (std::size_t j = 0; j < grid.N; ++j) {
    double v = psi_kdv(s * grid.x(j));
    out.l1_v0 += v * hh;
    out.l2sq_v0 += v * v * hh;
  }
  return out;
}

}  // namespace wwstab
