#pragma once

#include "wwstab/complexmath.hpp"
#include "wwstab/params.hpp"
#include "wwstab/soliton.hpp"

namespace wwstab {

/// mu_a(xi, eta) = sqrt((xi + ia)^2 + eta^2), upper-half-plane branch.
inline Complex mu_a(double xi, double eta, double a) {
  Complex z(xi, a);
  return branch_sqrt(z * z + eta * eta);
}

/// Symbol of the flat-surface transformed Dirichlet-Neumann operator:
/// mu_a tanh(mu_a). The removable zero at mu_a = 0 evaluates to mu_a^2.
inline Complex flat_dn_symbol(double xi, double eta, double a) {
  return z_tanh_z(mu_a(xi, eta, a));
}

enum class Sign { plus, minus };

/// Eigenvalues of the constant-coefficient linearized symbol:
/// i(xi + ia) +/- sqrt(-gamma * mu_a tanh mu_a).
inline Complex lambda0_pm(double xi, double eta, const Params& p, Sign s) {
  double a = p.a();
  Complex root = branch_sqrt(-p.gamma() * flat_dn_symbol(xi, eta, a));
  Complex base = Complex(0.0, 1.0) * Complex(xi, a);
  return s == Sign::plus ? base + root : base - root;
}

/// Principal symbol of the transformed Dirichlet-Neumann operator about the
/// wave: sqrt((xi+ia)^2 + eta^2 (1 + dzeta^2)).
inline Complex lambda1_zc(double dzeta_at_x, double xi, double eta, double a) {
  Complex z(xi, a);
  return branch_sqrt(z * z + eta * eta * (1.0 + dzeta_at_x * dzeta_at_x));
}

inline Complex lambda1_zc(double x, double xi, double eta, double a, const SolitonProfile& prof) {
  return lambda1_zc(prof.dzeta(x), xi, eta, a);
}

/// Modified principal symbol lambda1 * tanh(lambda1).
inline Complex lambda1_mod(double x, double xi, double eta, double a, const SolitonProfile& prof) {
  return z_tanh_z(lambda1_zc(x, xi, eta, a, prof));
}

/// Eigenvalue symbols of the diagonalized variable-coefficient operator:
/// i (d_c(x)(xi+ia) +/- sqrt(w_c(x)) sqrt(lambda1 tanh lambda1)).
inline Complex lambda1_pm(double x, double xi, double eta, const Params& p,
                          const SolitonProfile& prof, Sign s) {
  double a = p.a();
  Complex inner = prof.dc(x) * Complex(xi, a);
  Complex root = std::sqrt(prof.wc(x)) * branch_sqrt(lambda1_mod(x, xi, eta, a, prof));
  Complex arg = (s == Sign::plus) ? inner + root : inner - root;
  return Complex(0.0, 1.0) * arg;
}

/// Diagonalizer symbol g_eta = sqrt(w_c (mu_a tanh mu_a) / (lambda1 tanh lambda1)),
/// well defined for |eta| >= 2.
inline Complex g_eta_symbol(double x, double xi, double eta, const Params& p,
                            const SolitonProfile& prof) {
  double a = p.a();
  Complex num = prof.wc(x) * flat_dn_symbol(xi, eta, a);
  Complex den = lambda1_mod(x, xi, eta, a, prof);
  return branch_sqrt(num / den);
}

/// Pointwise algebraic bound on Re sqrt(-mu_a tanh mu_a):
/// |Im mu_a| / cos(Im mu_a) * sqrt(tanh(Re mu_a)/Re mu_a).
inline double sqrt_neg_dn_upper_bound(double xi, double eta, double a) {
  Complex mu = mu_a(xi, eta, a);
  double im = std::abs(mu.imag());
  double re = mu.real();
  double tanh_factor;
  if (re < 1e-8) {
    tanh_factor = 1.0;
  } else {
    tanh_factor = std::sqrt(std::tanh(re) / re);
  }
  return im / std::cos(im) * tanh_factor;
}

}  // namespace wwstab
