#pragma once

#include <complex>
#include <cmath>

namespace wwstab {

using Complex = std::complex<double>;

constexpr double pi() { return 3.141592653589793238462643383279502884; }

/// Square root with nonnegative real part. On the negative real axis the
/// branch is the limit from the upper half-plane, i.e. +i*sqrt(|c|).
inline Complex branch_sqrt(Complex c) {
  if (c.imag() == 0.0) {
    // kill a signed zero so std::sqrt picks the upper limit
    c = Complex(c.real(), 0.0);
    if (c.real() < 0.0) return Complex(0.0, std::sqrt(-c.real()));
  }
  Complex r = std::sqrt(c);
  if (r.real() < 0.0) r = -r;  // principal branch already has Re >= 0; guard roundoff
  return r;
}

/// tanh for complex argument, overflow-safe for large |Re z|.
inline Complex tanh_stable(Complex z) {
  double re = z.real();
  if (std::abs(re) > 20.0) {
    // (1 - e^{-2z}) / (1 + e^{-2z}) with the sign folded so the exponent decays
    double s = re > 0.0 ? 1.0 : -1.0;
    Complex e = std::exp(-2.0 * s * z);
    return s * (1.0 - e) / (1.0 + e);
  }
  return std::tanh(z);
}

/// z * tanh(z), with the removable cancellation at z ~ 0 handled by series.
inline Complex z_tanh_z(Complex z) {
  double m = std::abs(z);
  if (m < 1e-4) {
    Complex z2 = z * z;
    // z*tanh z = z^2 (1 - z^2/3 + 2 z^4/15 - ...)
    return z2 * (1.0 - z2 / 3.0 + (2.0 / 15.0) * z2 * z2);
  }
  return z * tanh_stable(z);
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace wwstab
