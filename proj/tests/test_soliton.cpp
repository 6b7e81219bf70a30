#include <catch2/catch.hpp>

#include "wwstab/soliton.hpp"

using namespace wwstab;

TEST_CASE("psi_kdv values and evenness") {
  CHECK(psi_kdv(0.0) == 1.0);
  double s = sech(1.0);
  CHECK(psi_kdv(2.0 / std::sqrt(3.0)) == Approx(s * s).epsilon(1e-14));
  for (double x : {0.3, 1.7, 4.2}) CHECK(psi_kdv(x) == Approx(psi_kdv(-x)).epsilon(1e-15));
}

TEST_CASE("build_profile zero amplitude") {
  Grid1D g(100.0, 64);
  SolitonProfile p = build_profile(0.0, g);
  CHECK(p.zeta_c.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.v_c.cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.d_c.minCoeff() == 1.0);
  CHECK(p.w_c.maxCoeff() == 1.0);
  CHECK(p.w_c.minCoeff() == 1.0);
}

TEST_CASE("build_profile leading-order values") {
  Grid1D g(250.0, 1024);
  double eps = 0.1;
  SolitonProfile p = build_profile(eps, g);

  // v_c(0) = eps^2 (Z_c(0) = 0)
  std::size_t j0 = g.N / 2;  // x = 0
  CHECK(g.x(j0) == 0.0);
  CHECK(p.v_c(j0) == Approx(eps * eps).epsilon(1e-12));

  // w_c - gamma = -d_c dZ_c; sup |psi''| = 3/2, so the deviation is ~1.5 eps^4
  double dev = (p.w_c.array() - (1.0 - eps * eps)).abs().maxCoeff();
  CHECK(dev <= 2.0 * std::pow(eps, 4));

  // |v_c - eps^2 psi(eps x)| <= 10 eps^5 pointwise
  double worst = 0.0;
  for (std::size_t j = 0; j < g.N; ++j)
    worst = std::max(worst, std::abs(p.v_c(j) - eps * eps * psi_kdv(eps * g.x(j))));
  CHECK(worst <= 10.0 * std::pow(eps, 5));
}

TEST_CASE("build_profile parity") {
  Grid1D g(250.0, 512);
  SolitonProfile p = build_profile(0.1, g);
  // grid is symmetric: x_j and -x_j both sampled for j != 0
  for (std::size_t j = 1; j < g.N; ++j) {
    std::size_t jr = g.N - j;  // x(jr) = -x(j)
    if (jr == g.N) continue;
    CHECK(p.zeta_c(j) == Approx(p.zeta_c(jr)).margin(1e-16));
    CHECK(p.Z_c(j) == Approx(-p.Z_c(jr)).margin(1e-16));
  }
}

TEST_CASE("spectral derivative of zeta_c matches analytic") {
  double eps = 0.1;
  Grid1D g(250.0, 1024);
  SolitonProfile p = build_profile(eps, g);
  Vec z(g.N);
  for (std::size_t j = 0; j < g.N; ++j) z(j) = p.zeta_c(j);
  Vec dz = g.derivative(z);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.N; ++j) worst = std::max(worst, std::abs(dz(j).real() - p.dzeta_c(j)));
  CHECK(worst < 1e-10);
}

TEST_CASE("build_profile rejects short domains") {
  Grid1D g(100.0, 256);
  CHECK_THROWS_AS(build_profile(0.1, g), std::invalid_argument);
}

TEST_CASE("profile_norms reproduces the closed-form values") {
  double l1_exact = 4.0 * std::sqrt(3.0) / 3.0;
  double l2sq_exact = 8.0 * std::sqrt(3.0) / 9.0;
  Grid1D g(500.0, 1024);
  ProfileNorms n = profile_norms(0.05, g);
  CHECK(n.l1_v0 == Approx(l1_exact).margin(1e-10));
  CHECK(n.l2sq_v0 == Approx(l2sq_exact).margin(1e-10));

  // halved domain, same answer (exponential tails)
  Grid1D g2(250.0, 1024);
  ProfileNorms n2 = profile_norms(0.1, g2);
  CHECK(n2.l1_v0 == Approx(n.l1_v0).margin(1e-10));
  CHECK(n2.l2sq_v0 == Approx(n.l2sq_v0).margin(1e-10));
}
