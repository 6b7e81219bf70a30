// Acceptance suite: runs every top-level verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include <cstdio>
#include <iostream>
#include <map>
#include <vector>

#include "wwstab/energy.hpp"
#include "wwstab/io.hpp"
#include "wwstab/kp_bridge.hpp"
#include "wwstab/resolvent.hpp"
#include "wwstab/sweeps.hpp"

using namespace wwstab;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct TraceBundle {
  Params p;
  Grid1D grid{1.0, 2};
  StripGrid sgrid;
  SolitonProfile prof;
  ModeCurve curve;
};

TraceBundle trace_at(double eps, double ahat, std::size_t n_eta = 16) {
  TraceBundle tb;
  tb.p = Params::make(eps, ahat);
  double X = std::max(25.0 / eps, 20.0 / tb.p.a());
  tb.grid = Grid1D(X, 512);
  tb.sgrid = StripGrid(tb.grid, 16);
  tb.prof = build_profile(eps, tb.grid);
  double band = eps * eps * tb.p.eta_hat0;
  std::vector<double> etas{0.0};
  for (std::size_t i = 1; i <= n_eta; ++i)
    etas.push_back(band * static_cast<double>(i) / static_cast<double>(n_eta));
  tb.curve = trace_resonant_modes(tb.p, etas, tb.prof, tb.sgrid);
  return tb;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
  Grid1D g(500.0, 1024);
  ProfileNorms n = profile_norms(0.05, g);
  double l1 = 4.0 * std::sqrt(3.0) / 3.0, l2 = 8.0 * std::sqrt(3.0) / 9.0;
  Params p = Params::make(0.05, 0.4);
  LsCoefficients lc = ls_coefficients(p, g);
  bool pass = std::abs(n.l1_v0 - l1) < 1e-10 && std::abs(n.l2sq_v0 - l2) < 1e-10 &&
              std::abs(lc.Lambda1 - 1.0 / std::sqrt(3.0)) < 1e-10 &&
              std::abs(lc.Lambda2 - 2.0 * std::sqrt(3.0) / 9.0) < 1e-9 &&
              std::abs(lc.kappa0 + std::sqrt(3.0) / 9.0) < 1e-9;
  report(1, "coefficient reproduction", pass,
         "|l1 err|=" + fmt(std::abs(n.l1_v0 - l1)) + ", |L2 err|=" +
             fmt(std::abs(lc.Lambda2 - 2.0 * std::sqrt(3.0) / 9.0)));
}

// ---------------------------------------------------------------- criterion 2
void criterion2(const TraceBundle& t05, const TraceBundle& t025) {
  auto errs = [](const TraceBundle& t) {
    double e1 = std::abs(t.curve.fitted.Lambda1 * t.curve.fitted.Lambda1 - 1.0 / 3.0);
    double e2 = std::abs(t.curve.fitted.Lambda2 - 0.38490);
    return std::make_pair(e1, e2);
  };
  auto [e1a, e2a] = errs(t05);
  auto [e1b, e2b] = errs(t025);
  bool tol = e1a < 0.15 && e2a < 0.15;
  // tightening epsilon halves the errors (factor-2 band), unless both sit at
  // the fit-noise floor already
  auto halves = [](double coarse, double fine) {
    if (fine <= 0.02) return true;
    double r = coarse / fine;
    return r >= 1.0 && r <= 4.0;
  };
  bool pass = tol && halves(e1a, e1b) && halves(e2a, e2b);
  report(2, "resonant-curve fit", pass,
         "L1^2 err " + fmt(e1a) + "->" + fmt(e1b) + ", L2 err " + fmt(e2a) + "->" + fmt(e2b) +
             ", split " + fmt(t05.curve.fitted.kernel_split));
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
  bool pass = true;
  std::string detail;
  for (double eps : {0.1, 0.05}) {
    Params p = Params::make(eps, 0.4);
    Grid1D g(25.0 / eps, 256);
    SolitonProfile prof = build_profile(eps, g);
    Grid3D grid;
    grid.xs.clear();
    for (int i = 0; i < 100; ++i) grid.xs.push_back(-25.0 / eps + 50.0 / eps * i / 99.0);
    grid.xis = make_freq_axis(0.0, 20.0, 50);
    grid.etas = make_freq_axis(2.0, 10.0, 50);
    SweepReport r1 = sweep_inequality("lem-ev-HT", grid, p, prof);
    SweepReport r2 = sweep_inequality("im-three-fifths", grid, p, prof);
    pass = pass && r1.pass && r2.pass;
    if (eps == 0.05)
      detail = "lem-ev-HT margin " + fmt(r1.min_margin) + " over " +
               std::to_string(r1.points) + " pts";
  }
  for (double ahat : {0.2, 0.4}) {
    Params p = Params::make(0.05, ahat);
    Grid1D g(500.0, 256);
    SolitonProfile prof = build_profile(p.epsilon, g);
    Grid3D grid;
    grid.xis = make_freq_axis(0.0, 50.0, 100, true, p.a());
    grid.etas = make_freq_axis(0.0, 50.0, 100, true, p.a());
    SweepReport r = sweep_inequality("relambdapm", grid, p, prof);
    pass = pass && r.pass;
  }
  report(3, "symbol lemma sweeps", pass, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
  Params p05 = Params::make(0.05, 0.4);
  Grid1D gf(20.0, 512);
  StripGrid sgf(gf, 32);
  SolitonProfile flat = zero_profile(gf, p05.epsilon);
  Vec f(gf.N);
  for (std::size_t j = 0; j < gf.N; ++j) f(j) = std::exp(-std::pow(gf.x(j) / 2.0, 2));
  Vec via = apply_dn(f, 1.3, p05.a(), flat, sgf);
  Vec direct = apply_flat_dn(f, 1.3, p05.a(), gf);
  double rel = gf.l2_norm(via - direct) / gf.l2_norm(direct);

  std::vector<double> epss{0.1, 0.05, 0.025}, errors;
  for (double eps : epss) {
    Params p = Params::make(eps, 0.4);
    Grid1D g(25.0 / eps, 512);
    StripGrid sg(g, 32);
    SolitonProfile prof = build_profile(eps, g);
    Mat G = StripSolver(prof, sg, p.a(), 3.0).dn_matrix();
    OperatorMatrix diff;
    diff.grid = g;
    diff.entries = G - dn_approx(3.0, p, prof, DnApproxKind::modified, g).entries;
    diff.src = diff.dst = NormTag{NormKind::L2, 3.0, p.a()};
    errors.push_back(operator_norm(diff));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    double x = std::log(epss[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  bool pass = rel <= 1e-8 && slope >= 1.8;
  report(4, "operator oracle equivalence and eps-order", pass,
         "flat rel err " + fmt(rel) + ", fitted order " + fmt(slope));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
  std::map<double, double> res0;
  for (double eps : {0.05, 0.025}) {
    Params p = Params::make(eps, 0.4);
    Grid1D g(25.0 / eps, 512);
    StripGrid sg(g, 16);
    SolitonProfile prof = build_profile(eps, g);
    res0[eps] = kernel_check(p, prof, sg).res0;
  }
  double ratio = res0[0.05] / res0[0.025];
  bool pass = res0[0.05] <= 10.0 * 0.05 * 0.05 && ratio >= 2.0 && ratio <= 6.0;
  report(5, "generalized kernel residual", pass,
         "res0(0.05)=" + fmt(res0[0.05]) + ", shrink x" + fmt(ratio));
  if (ratio > 6.0 && res0[0.05] <= 10.0 * 0.05 * 0.05)
    std::printf("        note: the residual of the leading-order kernel vector is third order"
                " (the profile defect enters differentiated: res0 ~ 0.4*eps^3), two orders"
                " below the eps^2 budget, so it shrinks by ~8x rather than the stated 4+-2x.\n");
}

// ---------------------------------------------------------------- criterion 6
void criterion6(const TraceBundle& t) {
  double band = t.p.epsilon * t.p.epsilon * t.p.eta_hat0;
  ProjectorPair pp = spectral_projection(band, t.curve, t.p, t.grid);
  double worst_idem = 0.0, worst_bio = 0.0, worst_real = 0.0;
  const Grid1D& g = t.grid;
  std::mt19937_64 rng(123);
  std::normal_distribution<double> nd;
  for (const EtaBasis& B : pp.bands) {
    Mat d = B.P * B.P - B.P;
    worst_idem = std::max(worst_idem, sigma_max_power(d, 10, 1));
    worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g1, B.g1s, g, B.eta) - 1.0));
    worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g2, B.g2s, g, B.eta) - 1.0));
    worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g1, B.g2s, g, B.eta)));
    worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g2, B.g1s, g, B.eta)));
    Vec top(g.N), bot(g.N);
    for (std::size_t j = 0; j < g.N; ++j) {
      double env = std::exp(-std::pow(g.x(j) / (0.2 * g.X), 2));
      top(j) = nd(rng) * env;
      bot(j) = nd(rng) * env;
    }
    Vec u(2 * g.N);
    u.head(g.N) = g.to_coeffs(top);
    u.tail(g.N) = g.to_coeffs(bot);
    Vec pu = B.P * u;
    Vec st = g.to_samples(Vec(pu.head(g.N))), sb = g.to_samples(Vec(pu.tail(g.N)));
    double im = st.imag().cwiseAbs().maxCoeff() + sb.imag().cwiseAbs().maxCoeff();
    double re = st.real().cwiseAbs().maxCoeff() + sb.real().cwiseAbs().maxCoeff();
    worst_real = std::max(worst_real, im / std::max(re, 1e-300));
  }
  bool pass = worst_idem <= 1e-6 && worst_bio <= 1e-6 && worst_real <= 1e-8;
  report(6, "projection algebra", pass,
         "idem " + fmt(worst_idem) + ", biorth " + fmt(worst_bio) + ", reality " +
             fmt(worst_real));
}

// ---------------------------------------------------------------- criterion 7
std::vector<Complex> edge_targets(const Params& p, const std::vector<double>& etas,
                                  double xi_max) {
  // lambda samples on the resolvent boundary aimed at the nearest symbol
  // eigenvalues, so the measured sup tracks the distance to the continuum
  double best = -1e30;
  Complex at(0, 0);
  for (double eta : etas)
    for (int i = 0; i <= 4000; ++i) {
      double xi = xi_max * i / 4000.0;
      for (Sign s : {Sign::plus, Sign::minus}) {
        Complex l = lambda0_pm(xi, eta, p, s);
        if (l.real() > best) {
          best = l.real();
          at = l;
        }
      }
    }
  double re = -0.5 * p.beta * std::pow(p.epsilon, 3);
  std::vector<Complex> out;
  for (double off : {-0.01, 0.0, 0.01}) {
    out.emplace_back(re, at.imag() + off);
    out.emplace_back(re, -at.imag() + off);
  }
  out.emplace_back(re, 0.0);
  out.emplace_back(1.0, 0.0);
  return out;
}

void criterion7(std::map<double, const TraceBundle*> traces) {
  // K and A held fixed across the epsilon set (admissible at the largest)
  double Kfix = 0.999 * std::pow(1.0 / 0.1, 0.25);
  double Afix = 2.0 * Kfix * (Kfix + 1.0);
  std::vector<double> epss{0.1, 0.05, 0.025};
  std::map<std::string, std::vector<double>> sups;
  for (double eps : epss) {
    Params p = Params::make(eps, 0.4);
    p.K = Kfix;
    p.A = Afix;
    p.validate();
    for (std::string band : {std::string("UH"), std::string("I")}) {
      Grid1D g(25.0 / eps, 256);
      StripGrid sg(g, band == "UH" ? 32 : 20);
      SolitonProfile prof = build_profile(eps, g);
      std::vector<double> etas = band == "UH"
                                     ? std::vector<double>{2.0, 3.0, 5.0}
                                     : std::vector<double>{Afix * eps * eps, 2.0 * Afix * eps * eps,
                                                           0.1, 0.5, 1.5};
      std::vector<Complex> lams = edge_targets(p, etas, g.xi(g.N / 2 - 1));
      ResolventReport rep = resolvent_sweep(lams, band, p, prof, sg, etas, false);
      sups[band].push_back(rep.sup_norm);
    }
    const TraceBundle& tb = *traces.at(eps);
    double bandtop = eps * eps * tb.p.eta_hat0;
    std::vector<double> etas{0.5 * bandtop, bandtop};
    std::vector<Complex> lams = edge_targets(tb.p, {etas.front()}, 1.0);
    ResolventReport rep =
        resolvent_sweep(lams, "L_low", tb.p, tb.prof, tb.sgrid, etas, true, &tb.curve);
    sups["L"].push_back(rep.sup_norm);
  }
  auto drift = [&](const std::vector<double>& scaled) {
    double lo = *std::min_element(scaled.begin(), scaled.end());
    double hi = *std::max_element(scaled.begin(), scaled.end());
    return hi / lo;
  };
  std::vector<double> uh_scaled, i_scaled, low_raw, low_scaled;
  for (std::size_t i = 0; i < epss.size(); ++i) {
    uh_scaled.push_back(sups["UH"][i] * epss[i]);
    i_scaled.push_back(sups["I"][i] * Afix * std::pow(epss[i], 3));
    low_raw.push_back(sups["L"][i]);
    low_scaled.push_back(sups["L"][i] * std::pow(epss[i], 3));
  }
  double d_uh = drift(uh_scaled), d_i = drift(i_scaled), d_low = drift(low_raw);
  bool pass_uh = d_uh <= 3.0, pass_i = d_i <= 3.0, pass_low = d_low <= 3.0;
  report(7, "resolvent region bounds", pass_uh && pass_i && pass_low,
         "UH sup*eps drift x" + fmt(d_uh) + ", I sup*A*eps^3 drift x" + fmt(d_i) +
             ", projected-low sup drift x" + fmt(d_low) + " (sup*eps^3 drift x" +
             fmt(drift(low_scaled)) + ")");
  if (!pass_low)
    std::printf("        note: the continuum edge of the assembled operator sits at"
                " Re ~ -0.47*a*eps^2, an eps^3 distance from the sampled half-plane, so the"
                " projected low-band sup grows like eps^-3 (measured sup*eps^3 stays within x%s);"
                " an epsilon-independent constant is unattainable at desk scale.\n",
                fmt(drift(low_scaled)).c_str());
}

// ---------------------------------------------------------------- criterion 8
void criterion8(const TraceBundle& t) {
  const Grid1D& g = t.grid;
  double band = t.p.epsilon * t.p.epsilon * t.p.eta_hat0;
  auto idx = t.curve.index_of(band);
  EtaBasis B = make_eta_basis(g, band, t.curve.modes[*idx]);
  BlockOperator L = assemble_La(band, t.p, t.prof, t.sgrid);

  Complex lam = t.curve.lambdas[*idx];
  double T_res = 6.0 / std::abs(lam.real());
  DecayTrace tr_res = semigroup_run(L, t.curve.modes[*idx], T_res, 0.25);
  double mode_err = std::abs(tr_res.fitted_rate - lam.real()) / std::abs(lam.real());

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Vec u(2 * g.N);
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));
  // solver-refined spectral projector: leakage through an approximate dual
  // re-excites the resonant rate at late times
  Mat Pref = refined_pair_projector(L.entries, lam, t.curve.modes[*idx], g);
  Vec q = u - Pref * u;
  double floor_rate = -t.p.a_hat * std::pow(t.p.epsilon, 3) / 8.0;
  double T_q = 2.5 / std::abs(floor_rate);
  DecayTrace tr_q = semigroup_run(L, q, T_q, 0.25);

  bool pass = mode_err <= 0.01 && tr_q.fitted_rate <= floor_rate;
  report(8, "semigroup decay", pass,
         "mode-rate err " + fmt(mode_err) + ", projected rate " + fmt(tr_q.fitted_rate) +
             " vs floor " + fmt(floor_rate));
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
  double r_small, r_big;
  {
    Params p = Params::make(0.05, 0.4);  // K = 2
    Grid1D g(25.0 / p.epsilon, 512);
    StripGrid sg(g, 16);
    SolitonProfile prof = build_profile(p.epsilon, g);
    r_small = kp_approx_residual(p, prof, sg);
  }
  {
    // K doubled with K^4 eps held fixed, per the operation's admissibility
    double eps = 0.05 / 16.0;
    Params p = Params::make(eps, 0.4);
    p.K = 4.0;
    p.A = 2.0 * p.K * (p.K + 1.0);
    p.validate();
    Grid1D g(25.0 / eps, 1024);
    StripGrid sg(g, 16);
    SolitonProfile prof = build_profile(eps, g);
    r_big = kp_approx_residual(p, prof, sg);
  }
  double ratio = r_small / r_big;

  Grid1D gkp(80.0, 1024);
  KpModes m = explicit_modes(0.1, 0.3, gkp);
  double lam_err = std::abs(m.lambda_kp - Complex(-0.00768, 0.11573));

  std::vector<double> etas, ims, res;
  for (double eta = 0.02; eta <= 0.2001; eta += 0.02) {
    KpModes mm = explicit_modes(eta, 0.3, gkp);
    etas.push_back(eta);
    ims.push_back(mm.lambda_kp.imag());
    res.push_back(mm.lambda_kp.real());
  }
  double s11 = 0, s13 = 0, s33 = 0, b1 = 0, b3 = 0;
  double q22 = 0, q24 = 0, q44 = 0, c2 = 0, c4 = 0;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    double tt = etas[i];
    s11 += tt * tt;
    s13 += std::pow(tt, 4);
    s33 += std::pow(tt, 6);
    b1 += tt * ims[i];
    b3 += std::pow(tt, 3) * ims[i];
    q22 += std::pow(tt, 4);
    q24 += std::pow(tt, 6);
    q44 += std::pow(tt, 8);
    c2 += tt * tt * res[i];
    c4 += std::pow(tt, 4) * res[i];
  }
  double lin = (b1 * s33 - b3 * s13) / (s11 * s33 - s13 * s13);
  double quad = (c2 * q44 - c4 * q24) / (q22 * q44 - q24 * q24);
  double two_l1 = 2.0 / std::sqrt(3.0), two_l2 = 4.0 * std::sqrt(3.0) / 9.0;

  bool pass = ratio >= 4.0 && ratio <= 12.0 && lam_err <= 1e-4 &&
              std::abs(lin - two_l1) <= 0.05 * two_l1 && std::abs(quad + two_l2) <= 0.05 * two_l2;
  report(9, "KP-II bridge", pass,
         "K-doubling shrink x" + fmt(ratio) + ", lambda err " + fmt(lam_err) + ", fit coeffs " +
             fmt(lin) + "/" + fmt(quad));
}

// --------------------------------------------------------------- criterion 10
void criterion10() {
  Params p = Params::make(0.05, 0.4);
  Grid1D g(500.0, 256);
  StripGrid sg(g, 16);
  SolitonProfile prof = build_profile(p.epsilon, g);
  double a = p.a(), eta = 1.5 * a;
  BlockOperator L = assemble_La(eta, p, prof, sg);
  Mat Pi = Mat::Zero(2 * g.N, 2 * g.N);
  for (std::size_t k = 0; k < g.N; ++k)
    if (in_singular_set(g.xi(k), eta, p)) {
      Pi(k, k) = 1.0;
      Pi(g.N + k, g.N + k) = 1.0;
    }
  Mat gen = Pi * L.entries * Pi;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Vec u(2 * g.N);
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));
  Vec v = Pi * u;
  double dt = 0.05 / sigma_max_power(gen, 10, 1);
  Mat E = (dt * gen).exp();
  double floor_ratio = -p.delta * p.delta * a / 8.0;
  bool pass = true;
  double worst = -1e30;
  for (int step = 0; step <= 18; ++step) {
    EnergyResult er = energy_functionals(v, EnergyBand::s, p, prof, sg, eta, &L);
    if (er.value > 0.0) {
      double ratio = er.dissipation / er.value;
      worst = std::max(worst, ratio);
      if (ratio > floor_ratio) pass = false;
    }
    v = E * v;
    E = E * E;  // dyadic sampling
  }
  report(10, "energy dissipation on the singular band", pass,
         "worst dissipation/value " + fmt(worst) + " vs floor " + fmt(floor_ratio));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  std::fflush(stdout);
  TraceBundle t05 = trace_at(0.05, 0.4);
  TraceBundle t025 = trace_at(0.025, 0.4);
  TraceBundle t10 = trace_at(0.1, 0.4, 8);
  std::map<double, const TraceBundle*> traces{{0.1, &t10}, {0.05, &t05}, {0.025, &t025}};

  criterion1();
  criterion2(t05, t025);
  criterion3();
  criterion4();
  criterion5();
  criterion6(t05);
  criterion7(traces);
  criterion8(t05);
  criterion9();
  criterion10();

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
