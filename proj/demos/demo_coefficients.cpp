// Prints the profile quadratures, the reduction coefficients derived from
// them, and the KP-II resonant eigenvalue at a sample frequency.

#include <cstdio>

#include "wwstab/kp2.hpp"
#include "wwstab/modes.hpp"

using namespace wwstab;

int main() {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 1024);

  ProfileNorms n = profile_norms(p.epsilon, g);
  std::printf("profile quadratures:  |v0|_L1 = %.12f   |v0|_L2^2 = %.12f\n", n.l1_v0, n.l2sq_v0);

  LsCoefficients lc = ls_coefficients(p, g);
  std::printf("reduction constants:  Lambda1 = %.12f   Lambda2 = %.12f   kappa0 = %.12f\n",
              lc.Lambda1, lc.Lambda2, lc.kappa0);

  Grid1D gkp(80.0, 1024);
  KpModes m = explicit_modes(0.1, 0.3, gkp);
  std::printf("KP eigenvalue at eta = 0.1, a_hat = 0.3:  %.8f %+.8fi\n", m.lambda_kp.real(),
              m.lambda_kp.imag());
  return 0;
}
