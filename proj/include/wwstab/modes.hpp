#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wwstab/eigensolve.hpp"
#include "wwstab/waveop.hpp"

namespace wwstab {

struct FittedExpansion {
  double Lambda1 = 0.0;
  double Lambda2 = 0.0;
  double fit_residual = 0.0;
  double kernel_split = 0.0;  // measured Jordan-pair splitting of the eta = 0 kernel
};

/// Sampled resonant eigenpair family. etas is symmetric about 0; modes and
/// eigenvalues at -eta are the complex conjugates of those at +eta.
struct ModeCurve {
  std::vector<double> etas;
  std::vector<Complex> lambdas;
  std::vector<Vec> modes;  // stacked (zeta, phi) coefficients, unit norm
  FittedExpansion fitted;

  std::optional<std::size_t> index_of(double eta) const {
    for (std::size_t i = 0; i < etas.size(); ++i)
      if (std::abs(etas[i] - eta) < 1e-14) return i;
    return std::nullopt;
  }
};

/// Kernel seed of the eta = 0 operator in the transformed frame:
/// e^{ax} (zeta_c', v_c), stacked coefficients.
inline Vec kernel_vector(const SolitonProfile& prof, const Grid1D& g, double a) {
  Vec top(g.N), bot(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    double wgt = std::exp(a * g.x(j));
    top(j) = wgt * prof.dzeta_c(j);
    bot(j) = wgt * prof.v_c(j);
  }
  Vec out(2 * g.N);
  out.head(g.N) = g.to_coeffs(top);
  out.tail(g.N) = g.to_coeffs(bot);
  return out;
}

namespace detail {

// least squares of y against {t^p : p in powers}, solved on rescaled
// variables so the normal equations stay conditioned for tiny t
inline std::vector<double> fit_powers(const std::vector<double>& t, const std::vector<double>& y,
                                      const std::vector<int>& powers) {
  const int m = static_cast<int>(powers.size());
  double tmax = 0.0, ymax = 0.0;
  for (double v : t) tmax = std::max(tmax, std::abs(v));
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  if (tmax == 0.0) tmax = 1.0;
  if (ymax == 0.0) ymax = 1.0;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double ts = t[i] / tmax;
    for (int r = 0; r < m; ++r) {
      double u = std::pow(ts, powers[r]);
      b(r) += u * y[i] / ymax;
      for (int c = 0; c < m; ++c) A(r, c) += u * std::pow(ts, powers[c]);
    }
  }
  Eigen::VectorXd x = A.fullPivLu().solve(b);
  std::vector<double> out(m);
  for (int r = 0; r < m; ++r) out[r] = x(r) * ymax / std::pow(tmax, powers[r]);
  return out;
}

}  // namespace detail

/// Extract the expansion coefficients of lambda(eta) ~ i eps Lambda1 eta -
/// Lambda2 eta^2 / eps from curve samples with 0 < eta <= eta_fit_max.
///
/// At finite epsilon the approximate kernel pair of the eta = 0 operator is
/// split by a real constant s, which shifts the squared eigenvalue by -s^2
/// uniformly over the band. Fitting (Im lambda)^2 against {1, eta^2, eta^4}
/// deconvolves that shift; samples in the split-dominated regime
/// (|Im| < |Re|) carry no phase information and are skipped.
inline FittedExpansion fit_mode_curve(const ModeCurve& curve, double epsilon,
                                      double eta_fit_max) {
  std::vector<double> ts, im2, res;
  for (std::size_t i = 0; i < curve.etas.size(); ++i) {
    double eta = curve.etas[i];
    if (eta <= 0.0 || eta > eta_fit_max * (1.0 + 1e-12)) continue;
    Complex l = curve.lambdas[i];
    if (std::abs(l.imag()) < std::abs(l.real())) continue;
    ts.push_back(eta);
    im2.push_back(l.imag() * l.imag());
    res.push_back(l.real());
  }
  FittedExpansion out;
  if (ts.size() < 3) throw std::invalid_argument("fit_mode_curve: need at least 3 usable samples");
  std::vector<double> ci = detail::fit_powers(ts, im2, {0, 2, 4});
  std::vector<double> cr = detail::fit_powers(ts, res, {2, 4});
  out.Lambda1 = std::sqrt(std::max(ci[1], 0.0)) / epsilon;
  out.Lambda2 = -cr[0] * epsilon;
  out.kernel_split = std::sqrt(std::max(-ci[0], 0.0));
  double ss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double t = ts[i];
    double mi2 = ci[0] + ci[1] * t * t + ci[2] * std::pow(t, 4);
    Complex model(cr[0] * t * t + cr[1] * std::pow(t, 4),
                  std::sqrt(std::max(mi2, 0.0)));
    Complex sample(res[i], std::sqrt(im2[i]));
    ss += std::norm(sample - model);
  }
  out.fit_residual = std::sqrt(ss / static_cast<double>(ts.size()));
  return out;
}

/// Continue the resonant eigenpair of L_a(eta) from the generalized kernel at
/// eta = 0. eta_list must contain 0 and lie inside the resonant band; only
/// nonnegative entries are solved, negatives follow by conjugation.
inline ModeCurve trace_resonant_modes(const Params& p, const std::vector<double>& eta_list,
                                      const SolitonProfile& prof, const StripGrid& sg) {
  const Grid1D& g = sg.x_grid;
  double band = p.epsilon * p.epsilon * p.eta_hat0 * (1.0 + 1e-12);
  bool has_zero = false;
  std::vector<double> pos;
  for (double eta : eta_list) {
    if (std::abs(eta) > band)
      throw std::invalid_argument("trace_resonant_modes: eta outside the resonant band");
    if (eta == 0.0) has_zero = true;
    if (eta > 0.0) pos.push_back(eta);
  }
  if (!has_zero) throw std::invalid_argument("trace_resonant_modes: eta_list must include 0");
  std::sort(pos.begin(), pos.end());

  Vec v0 = kernel_vector(prof, g, p.a());
  v0 /= v0.norm();
  // the translation eigenvalue is pinned at 0 by convention; the numerical
  // defect of the seeded kernel vector is what kernel_check reports
  std::vector<double> etas{0.0};
  std::vector<Complex> lams{Complex(0.0, 0.0)};
  std::vector<Vec> modes{v0};

  Complex prev_lambda = 0.0;
  Vec prev_vec = v0;
  double prev_eta = 0.0;
  Complex prev2_lambda = 0.0;
  double prev2_eta = 0.0;
  bool have_two = false;

  for (double eta : pos) {
    BlockOperator L = assemble_La(eta, p, prof, sg);
    Complex shift;
    if (!have_two) {
      shift = prev_lambda + Complex(0.0, p.epsilon * eta / std::sqrt(3.0));
    } else {
      double t = (eta - prev_eta) / (prev_eta - prev2_eta);
      shift = prev_lambda + t * (prev_lambda - prev2_lambda);
    }
    EigPair pair = shift_invert(L.entries, shift, prev_vec);
    double scale = std::max(std::abs(shift), p.epsilon * eta);
    // near the exceptional point where the split kernel pair collides with
    // the curve, the iteration stalls at the cluster level; accept it there
    bool acceptable = pair.converged || pair.residual <= 1e-6;
    if (!acceptable || std::abs(pair.lambda - shift) > 50.0 * scale)
      throw std::runtime_error("trace_resonant_modes: continuation failed at eta = " +
                               std::to_string(eta));
    // phase-fix against the previous mode
    Complex c = prev_vec.dot(pair.vector);
    if (std::abs(c) > 0.0) pair.vector *= std::conj(c) / std::abs(c);
    etas.push_back(eta);
    lams.push_back(pair.lambda);
    modes.push_back(pair.vector);
    prev2_lambda = prev_lambda;
    prev2_eta = prev_eta;
    have_two = prev_eta > 0.0;
    prev_lambda = pair.lambda;
    prev_eta = eta;
    prev_vec = pair.vector;
  }

  // mirror to negative eta by conjugation symmetry
  ModeCurve curve;
  for (std::size_t i = pos.size(); i >= 1; --i) {
    curve.etas.push_back(-etas[i]);
    curve.lambdas.push_back(std::conj(lams[i]));
    Vec top = g.to_samples(Vec(modes[i].head(g.N)));
    Vec bot = g.to_samples(Vec(modes[i].tail(g.N)));
    Vec conj_mode(2 * g.N);
    conj_mode.head(g.N) = g.to_coeffs(top.conjugate());
    conj_mode.tail(g.N) = g.to_coeffs(bot.conjugate());
    curve.modes.push_back(conj_mode);
  }
  for (std::size_t i = 0; i < etas.size(); ++i) {
    curve.etas.push_back(etas[i]);
    curve.lambdas.push_back(lams[i]);
    curve.modes.push_back(modes[i]);
  }
  try {
    curve.fitted = fit_mode_curve(curve, p.epsilon, 0.5 * band);
  } catch (const std::invalid_argument&) {
    // short traces (projection / detection use) carry no expansion fit
    curve.fitted = FittedExpansion{};
    curve.fitted.fit_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

struct LsCoefficients {
  double Lambda1 = 0.0;
  double Lambda2 = 0.0;
  double kappa0 = 0.0;
};

/// Leading-order reduction coefficients from the profile quadratures:
/// Lambda1 = 1/sqrt(3), Lambda2 = (1/9) ||v0||_L1^2 / ||v0||_L2^2,
/// kappa0 = -(1/18) ||v0||_L1^2 / ||v0||_L2^2.
inline LsCoefficients ls_coefficients(const Params& p, const Grid1D& g) {
  ProfileNorms n = profile_norms(p.epsilon, g);
  LsCoefficients out;
  double ratio = n.l1_v0 * n.l1_v0 / n.l2sq_v0;
  out.Lambda1 = 1.0 / std::sqrt(3.0);
  out.Lambda2 = ratio / 9.0;
  out.kappa0 = -ratio / 18.0;
  return out;
}

struct KernelCheck {
  double res0 = 0.0;
  double res1 = 0.0;
  bool vacuous = false;
};

/// Residuals of the generalized-kernel identities of the eta = 0 operator
/// (untransformed, a = 0) with the leading-order c-derivative fields.
///
/// The second kernel vector tends to opposite constants at +-infinity, so it
/// is made periodic by subtracting the linear ramp c_r x. The operator's
/// action on the ramp is added back in closed form: the flux of the harmonic
/// extension of the datum x is -zeta_c', and the transport block contributes
/// c_r d_c.
inline KernelCheck kernel_check(const Params& p, const SolitonProfile& prof, const StripGrid& sg) {
  (void)p;
  const Grid1D& g = sg.x_grid;
  KernelCheck out;
  if (prof.flat || prof.zeta_c.cwiseAbs().maxCoeff() == 0.0) {
    out.vacuous = true;
    return out;
  }
  BlockOperator L = assemble_La(0.0, 0.0, prof, sg);
  const std::size_t n = g.N;
  double eps = prof.epsilon;

  Vec v0(2 * n);
  {
    Vec top(n), bot(n);
    for (std::size_t j = 0; j < n; ++j) {
      top(j) = prof.dzeta_c(j);
      bot(j) = prof.v_c(j);
    }
    v0.head(n) = g.to_coeffs(top);
    v0.tail(n) = g.to_coeffs(bot);
  }
  out.res0 = (L.entries * v0).norm() / v0.norm();

  // second kernel vector (c-derivative of the wave family at leading order),
  // with the ramp split off so the sampled field is smooth and periodic
  double gam = 1.0 - eps * eps;
  double ramp = 2.0 / (std::sqrt(3.0) * eps * g.X);
  Vec v1(2 * n);
  {
    Vec top(n), bot(n);
    for (std::size_t j = 0; j < n; ++j) {
      double x = g.x(j), xh = eps * x;
      double phi10 = 2.0 * psi_kdv(xh) + xh * psi_kdv_prime(xh);
      double F = (2.0 / std::sqrt(3.0)) * std::tanh(0.5 * std::sqrt(3.0) * xh);
      top(j) = gam * phi10;
      bot(j) = F / eps + gam * x * psi_kdv(xh) - prof.Zc(x) * gam * phi10 - ramp * x;
    }
    v1.head(n) = g.to_coeffs(top);
    v1.tail(n) = g.to_coeffs(bot);
  }
  Vec resid = L.entries * v1 + v0;
  {
    Vec rtop = g.to_samples(Vec(resid.head(n)));
    Vec rbot = g.to_samples(Vec(resid.tail(n)));
    for (std::size_t j = 0; j < n; ++j) {
      rtop(j) += ramp * (-prof.dzeta_c(j));
      rbot(j) += ramp * prof.d_c(j);
    }
    resid.head(n) = g.to_coeffs(rtop);
    resid.tail(n) = g.to_coeffs(rbot);
  }
  out.res1 = resid.norm() / v0.norm();
  return out;
}

}  // namespace wwstab
