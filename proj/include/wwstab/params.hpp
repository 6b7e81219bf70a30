#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wwstab {

/// Amplitude / weight / region constants shared by every module.
///
/// a = a_hat * epsilon is the exponential weight rate, gamma = 1 - epsilon^2.
/// A, K, delta carve up the frequency plane; eta_hat0 is the half-width of the
/// resonant transverse band in scaled units (band |eta| <= epsilon^2*eta_hat0).
struct Params {
  double epsilon = 0.05;
  double a_hat = 0.4;
  double beta = 0.05;     // decay margin: resolvent half-plane Re(lambda) > -beta*eps^3
  double A = 8.0;         // intermediate-region constant
  double K = 2.0;         // longitudinal cutoff constant
  double delta = 0.3;     // small region constant
  double eta_hat0 = 0.2;  // resonant window

  double a() const { return a_hat * epsilon; }
  double gamma() const { return 1.0 - epsilon * epsilon; }

  static Params make(double eps, double ahat) {
    Params p;
    p.epsilon = eps;
    p.a_hat = ahat;
    p.beta = ahat / 8.0;
    // largest admissible K up to the default 2, then A in [K(K+1), 2K(K+1)]
    p.K = std::min(2.0, 0.999 * std::pow(1.0 / eps, 0.25));
    p.A = 2.0 * p.K * (p.K + 1.0);
    p.validate();
    return p;
  }

  void validate() const {
    auto fail = [](const std::string& m) { throw std::invalid_argument("Params: " + m); };
    if (!(epsilon > 0.0 && epsilon <= 0.2)) fail("epsilon must satisfy 0 < epsilon <= 0.2");
    if (!(a_hat > 0.0 && a_hat < std::sqrt(3.0) / 4.0)) fail("a_hat must satisfy 0 < a_hat < sqrt(3)/4");
    if (!(beta > 0.0 && beta <= 0.5)) fail("beta must satisfy 0 < beta <= 1/2");
    if (!(A * epsilon * epsilon < 1.0)) fail("A*epsilon^2 must be < 1");
    if (!(std::pow(K, 4) * epsilon <= 1.0)) fail("K^4*epsilon must be <= 1");
    if (!(delta > 0.0 && delta < 1.0)) fail("delta must satisfy 0 < delta < 1");
    if (!(eta_hat0 > 0.0)) fail("eta_hat0 must be positive");
  }
};

}  // namespace wwstab
