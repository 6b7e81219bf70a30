#include <catch2/catch.hpp>

#include "wwstab/resolvent.hpp"
#include "wwstab/semigroup.hpp"

using namespace wwstab;

TEST_CASE("weighted shift factorization solves to tolerance") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 128);
  StripGrid sg(g, 20);
  SolitonProfile prof = build_profile(p.epsilon, g);
  BlockOperator L = assemble_La(2.0, p, prof, sg);
  Mat B = xnorm_weighted_shifted(L, Complex(1.0, 0.0));
  Eigen::PartialPivLU<Mat> lu(B);
  Vec e = Vec::Zero(2 * g.N);
  e(3) = 1.0;
  Vec x = lu.solve(e);
  CHECK((B * x - e).norm() <= 1e-8 * x.norm());
}

TEST_CASE("resolvent at lambda = 1 respects the field-of-values oracle") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 128);
  StripGrid sg(g, 20);
  SolitonProfile prof = build_profile(p.epsilon, g);
  double eta = 2.0;
  BlockOperator L = assemble_La(eta, p, prof, sg);
  Mat W = xnorm_weighted(L);
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (W + W.adjoint())));
  double fov_max = es.eigenvalues().maxCoeff();
  INFO("numerical-range max real part " << fov_max);
  REQUIRE(fov_max < 1.0);
  ResolventReport rep =
      resolvent_sweep({Complex(1.0, 0.0)}, "UH", p, prof, sg, {eta}, false);
  CHECK(rep.sup_norm <= 1.0 / (1.0 - fov_max) * (1.0 + 1e-6));
}

TEST_CASE("UH-band sweep is finite and the scaled constant is moderate") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 256);
  StripGrid sg(g, 24);
  SolitonProfile prof = build_profile(p.epsilon, g);
  std::vector<Complex> lams = {Complex(0.0, 0.0), Complex(0.0, 2.0), Complex(0.0, -2.0),
                               Complex(0.0, 8.0)};
  ResolventReport rep = resolvent_sweep(lams, "UH", p, prof, sg, {2.0, 3.0}, false);
  INFO("sup norm " << rep.sup_norm << " times eps = " << rep.sup_norm * p.epsilon);
  CHECK(rep.pass);
  CHECK(rep.sup_norm * p.epsilon <= 1e3);
  CHECK_FALSE(rep.eigenvalue_detected);
}

TEST_CASE("grid refinement moves the sup by a few percent only") {
  Params p = Params::make(0.1, 0.4);
  std::vector<Complex> lams = {Complex(0.0, 1.0)};
  double sup[2];
  int i = 0;
  for (std::size_t n : {128ul, 256ul}) {
    Grid1D g(250.0, n);
    StripGrid sg(g, 24);
    SolitonProfile prof = build_profile(p.epsilon, g);
    sup[i++] = resolvent_sweep(lams, "UH", p, prof, sg, {2.5}, false).sup_norm;
  }
  INFO("sup at N=128: " << sup[0] << ", N=256: " << sup[1]);
  CHECK(std::abs(sup[1] - sup[0]) <= 0.05 * sup[0]);
}

TEST_CASE("an eigenvalue on the traced curve is detected as near-singular") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(1000.0, 256);
  StripGrid sg(g, 16);
  SolitonProfile prof = build_profile(p.epsilon, g);
  double band = p.epsilon * p.epsilon * p.eta_hat0;
  std::vector<double> etas{0.0, 0.5 * band, band};
  ModeCurve curve = trace_resonant_modes(p, etas, prof, sg);
  auto idx = curve.index_of(band);
  REQUIRE(idx.has_value());
  Complex lam = curve.lambdas[*idx];
  BlockOperator L = assemble_La(band, p, prof, sg);
  Mat B = xnorm_weighted_shifted(L, lam);
  double smin = sigma_min_weighted(B);
  INFO("sigma_min at the eigenvalue " << smin);
  CHECK(smin <= 1e-4);
  // the low band demands projection
  CHECK_THROWS_AS(resolvent_sweep({lam}, "L_low", p, prof, sg, {band}, false),
                  std::invalid_argument);
  // with projection the same lambda is regular: the norm drops from the
  // eigenvalue singularity to the distance-to-continuum level
  ResolventReport rep = resolvent_sweep({lam}, "L_low", p, prof, sg, {band}, true, &curve);
  INFO("projected norm " << rep.sup_norm);
  CHECK(std::isfinite(rep.sup_norm));
  CHECK(rep.sup_norm < 1e-4 / smin);
  double edge = -1e9;
  for (std::size_t k = 0; k < g.N; ++k)
    edge = std::max(edge, lambda0_pm(g.xi(k), band, p, Sign::plus).real());
  double dist = std::abs(lam.real() - edge);
  INFO("distance from lambda to the continuum edge " << dist);
  CHECK(rep.sup_norm >= 0.02 / dist);
  CHECK(rep.sup_norm <= 50.0 / dist);
}

TEST_CASE("flat-field semigroup decays at the symbol rate") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(100.0, 64);
  StripGrid sg(g, 16);
  SolitonProfile flat = zero_profile(g, p.epsilon);
  double eta = 0.8;
  BlockOperator L = assemble_La(eta, p, flat, sg);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Vec u(2 * g.N);
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));
  double slowest = -1e9;
  for (std::size_t k = 0; k < g.N; ++k) {
    slowest = std::max(slowest, lambda0_pm(g.xi(k), eta, p, Sign::plus).real());
    slowest = std::max(slowest, lambda0_pm(g.xi(k), eta, p, Sign::minus).real());
  }
  double T = 256.0 / std::abs(slowest);  // the log-slope converges like 1/t
  DecayTrace tr = semigroup_run(L, u, T, 0.25);
  INFO("fitted " << tr.fitted_rate << " expected " << slowest);
  CHECK(std::abs(tr.fitted_rate - slowest) <= 0.01 * std::abs(slowest));
}

TEST_CASE("trace derivative at t = 0 matches the Rayleigh quotient") {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 128);
  StripGrid sg(g, 16);
  SolitonProfile prof = build_profile(p.epsilon, g);
  BlockOperator L = assemble_La(1.0, p, prof, sg);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  Vec u(2 * g.N);
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));

  RealVec w = xnorm_weights(g, 1.0, p.a());
  auto xdot = [&](const Vec& a, const Vec& b) {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += w(i) * w(i) * std::conj(a(i)) * b(i);
    return 2.0 * g.X * s;
  };
  double rayleigh = std::real(xdot(u, L.entries * u)) / std::real(xdot(u, u));

  double dt = 1e-7;
  Mat E = (dt * L.entries).exp();
  double n0 = xnorm(L, u), n1 = xnorm(L, E * u);
  double slope = (std::log(n1) - std::log(n0)) / dt;
  INFO("slope " << slope << " rayleigh " << rayleigh);
  CHECK(std::abs(slope - rayleigh) <= 1e-6 * std::max(1.0, std::abs(rayleigh)));
}
