#include <catch2/catch.hpp>

#include "wwstab/kp2.hpp"
#include "wwstab/kp_bridge.hpp"

using namespace wwstab;

namespace {
Grid1D kp_grid() { return Grid1D(80.0, 1024); }
}

TEST_CASE("kp operator kernel at eta = 0") {
  Grid1D g = kp_grid();
  double a_hat = 0.3;
  KpOperator L = assemble_kp(0.0, a_hat, g);
  Vec v(g.N);
  for (std::size_t j = 0; j < g.N; ++j)
    v(j) = std::exp(a_hat * g.x(j)) * psi_kdv_prime(g.x(j));
  Vec c = g.to_coeffs(v);
  double resid = (L.matrix * c).norm() / c.norm();
  INFO("kernel residual " << resid);
  CHECK(resid < 1e-8);
}

TEST_CASE("kp operator is even in eta") {
  Grid1D g(40.0, 128);
  Mat A = assemble_kp(0.35, 0.3, g).matrix;
  Mat B = assemble_kp(-0.35, 0.3, g).matrix;
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(assemble_kp(0.1, 0.9, g), std::invalid_argument);
}

TEST_CASE("explicit mode eigenvalue at eta = 0.1") {
  Grid1D g = kp_grid();
  KpModes m = explicit_modes(0.1, 0.3, g);
  // scalar oracle: (2 i eta / sqrt(3)) sqrt(1 + 4 i eta / 3)
  Complex oracle = 2.0 * Complex(0.0, 0.1) / std::sqrt(3.0) * std::sqrt(Complex(1.0, 0.4 / 3.0));
  INFO("lambda_kp = " << m.lambda_kp << " oracle " << oracle);
  CHECK(std::abs(m.lambda_kp - oracle) < 1e-6);
  CHECK(std::abs(m.lambda_kp - Complex(-0.00768, 0.11573)) < 1e-4);
  KpOperator L = assemble_kp(0.1, 0.3, g);
  double resid = (L.matrix * m.g0 - m.lambda_kp * m.g0).norm() / m.g0.norm();
  CHECK(resid < 1e-7);
}

TEST_CASE("explicit modes decay strictly in the admissible window") {
  Grid1D g = kp_grid();
  for (double eta : {0.02, 0.05, 0.1, 0.15}) {
    KpModes m = explicit_modes(eta, 0.3, g);
    CHECK(m.lambda_kp.real() < 0.0);
  }
  CHECK_THROWS_AS(explicit_modes(2.0, 0.05, g), std::invalid_argument);
}

TEST_CASE("kp eigenvalue fit matches twice the reduction coefficients") {
  Grid1D g = kp_grid();
  std::vector<double> etas, ims, res;
  for (double eta = 0.02; eta <= 0.2001; eta += 0.02) {
    KpModes m = explicit_modes(eta, 0.3, g);
    etas.push_back(eta);
    ims.push_back(m.lambda_kp.imag());
    res.push_back(m.lambda_kp.real());
  }
  double s11 = 0, s13 = 0, s33 = 0, b1 = 0, b3 = 0;
  double q22 = 0, q24 = 0, q44 = 0, c2 = 0, c4 = 0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    double t = etas[i];
    s11 += t * t;
    s13 += std::pow(t, 4);
    s33 += std::pow(t, 6);
    b1 += t * ims[i];
    b3 += std::pow(t, 3) * ims[i];
    q22 += std::pow(t, 4);
    q24 += std::pow(t, 6);
    q44 += std::pow(t, 8);
    c2 += t * t * res[i];
    c4 += std::pow(t, 4) * res[i];
  }
  double det1 = s11 * s33 - s13 * s13;
  double lin = (b1 * s33 - b3 * s13) / det1;
  double det2 = q22 * q44 - q24 * q24;
  double quad = (c2 * q44 - c4 * q24) / det2;
  double two_l1 = 2.0 / std::sqrt(3.0);
  double two_l2 = 2.0 * 2.0 * std::sqrt(3.0) / 9.0;
  INFO("linear " << lin << " vs " << two_l1 << ", quadratic " << quad << " vs " << -two_l2);
  CHECK(std::abs(lin - two_l1) < 0.05 * two_l1);
  CHECK(std::abs(quad + two_l2) < 0.05 * two_l2);
}

TEST_CASE("kp basis at eta = 0 matches the closed forms") {
  Grid1D g = kp_grid();
  double a_hat = 0.3;
  KpBasis B = kp_basis(0.0, a_hat, g);
  Vec g01 = g.to_samples(B.g01);
  // compare in the transformed frame (the inverse weight amplifies roundoff
  // by e^{a_hat X} at the far edge)
  double worst = 0.0;
  for (std::size_t j = 0; j < g.N; ++j)
    worst = std::max(worst,
                     std::abs(g01(j) - std::exp(a_hat * g.x(j)) * psi_kdv_prime(g.x(j))));
  CHECK(worst < 1e-10);
}

TEST_CASE("kp basis is even in eta up to O(eta^2)") {
  Grid1D g = kp_grid();
  double a_hat = 0.3;
  KpBasis B0 = kp_basis(0.0, a_hat, g);
  for (double eta : {0.05, 0.1}) {
    KpBasis B = kp_basis(eta, a_hat, g);
    double d1 = std::sqrt(2.0 * g.X) * (B.g01 - B0.g01).norm();
    double d2 = std::sqrt(2.0 * g.X) * (B.g02 - B0.g02).norm();
    INFO("eta " << eta << " diffs " << d1 << " " << d2);
    CHECK(d1 <= 50.0 * eta * eta);
    CHECK(d2 <= 50.0 * eta * eta);
  }
}

TEST_CASE("kp basis biorthogonality") {
  Grid1D g = kp_grid();
  KpBasis B = kp_basis(0.1, 0.3, g);
  double vol = 2.0 * g.X;
  Eigen::Matrix2cd gram;
  gram(0, 0) = vol * B.g01s.dot(B.g01);
  gram(0, 1) = vol * B.g02s.dot(B.g01);
  gram(1, 0) = vol * B.g01s.dot(B.g02);
  gram(1, 1) = vol * B.g02s.dot(B.g02);
  INFO("gram " << gram);
  CHECK((gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("kp resolvent bound far from the spectrum") {
  Grid1D g(80.0, 1024);
  double a_hat = 0.3, eta = 0.1;
  KpResolventReport rep = kp_resolvent_bound({Complex(1.0, 0.0)}, eta, a_hat, g);
  KpOperator L = assemble_kp(eta, a_hat, g);
  Mat H = 0.5 * (L.matrix + L.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  double fov_max = es.eigenvalues().maxCoeff();
  INFO("sup_norm " << rep.sup_norm << " fov max " << fov_max);
  if (fov_max < 2.0) CHECK(rep.sup_norm <= 1.0 / (2.0 - fov_max) * 1.05 + 1e-12);
  CHECK(rep.sup_norm <= 2.0);
}

TEST_CASE("kp resolvent detects the resonance without projection") {
  Grid1D g(80.0, 1024);
  double a_hat = 0.3, eta = 0.1;
  KpModes m = explicit_modes(eta, a_hat, g);
  Complex lam_half = 0.5 * m.lambda_kp;
  KpResolventReport with = kp_resolvent_bound({lam_half}, eta, a_hat, g, true);
  KpResolventReport without = kp_resolvent_bound({lam_half}, eta, a_hat, g, false);
  INFO("projected " << with.sup_norm << " raw " << without.sup_norm);
  CHECK(without.sup_norm > 1e4);
  CHECK(with.sup_norm < 1e3);
}

TEST_CASE("kp resolvent sweep on the imaginary axis is finite") {
  Grid1D g(80.0, 1024);
  std::vector<Complex> lams;
  for (int i = -5; i <= 5; ++i) lams.emplace_back(0.0, static_cast<double>(i));
  KpResolventReport rep = kp_resolvent_bound(lams, 0.1, 0.3, g);
  INFO("sup over the axis " << rep.sup_norm << " at " << rep.worst_lambda);
  CHECK(std::isfinite(rep.sup_norm));
  CHECK(rep.sup_norm > 0.0);
}

TEST_CASE("free-symbol part of the low-frequency reduction") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(25.0 / p.epsilon, 512);
  StripGrid sg(g, 16);
  SolitonProfile flat = zero_profile(g, p.epsilon);
  KpBridgeResult r = kp_approx_residual_at(p, flat, sg, 0.0);
  double bound = 100.0 * std::pow(p.K * p.epsilon, 5) / std::pow(p.epsilon, 3);
  INFO("free part " << r.free_part_over_eps3 << " bound " << bound);
  CHECK(r.free_part_over_eps3 <= bound);
}
