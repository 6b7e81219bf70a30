#pragma once

#include <limits>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "wwstab/waveop.hpp"

namespace wwstab {

struct DecayTrace {
  std::vector<double> times;
  std::vector<double> norms;
  double fitted_rate = 0.0;
};

/// Least-squares slope of log(norm) over the last `tail` samples.
inline double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& norms,
                             std::size_t tail = 3) {
  std::size_t n = times.size();
  std::size_t start = n > tail ? n - tail : 0;
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t m = 0;
  for (std::size_t i = start; i < n; ++i) {
    if (!(norms[i] > 0.0)) continue;
    double t = times[i], y = std::log(norms[i]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++m;
  }
  double det = m * stt - st * st;
  if (std::abs(det) < 1e-300) return 0.0;
  return (m * sty - st * sy) / det;
}

/// Evolve exp(t L) applied to `initial` with the dense matrix exponential:
/// one Pade exponential for the base step, then repeated squaring, so the
/// trace is sampled at dyadic times up to T. Norms are X-norms.
inline DecayTrace semigroup_run(const BlockOperator& L, const Vec& initial, double T, double dt) {
  double scale = sigma_max_power(L.entries, 12, 1);
  if (dt * scale > 0.5) dt = 0.5 / scale;
  Mat E = (dt * L.entries).exp();
  DecayTrace trace;
  trace.times.push_back(0.0);
  trace.norms.push_back(xnorm(L, initial));
  double t = dt;
  Vec v = E * initial;
  trace.times.push_back(t);
  trace.norms.push_back(xnorm(L, v));
  while (t < T) {
    E = E * E;
    t *= 2.0;
    v = E * initial;
    trace.times.push_back(t);
    trace.norms.push_back(xnorm(L, v));
  }
  trace.fitted_rate = fit_decay_rate(trace.times, trace.norms);
  return trace;
}

/// Aggregated decay over a set of transverse frequencies: the traces share
/// dyadic times, norms add in quadrature.
inline DecayTrace semigroup_run_band(const Params& p, const SolitonProfile& prof,
                                     const StripGrid& sg, const std::vector<double>& etas,
                                     const std::vector<Vec>& initials, double T, double dt) {
  DecayTrace agg;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    BlockOperator L = assemble_La(etas[i], p, prof, sg);
    DecayTrace tr = semigroup_run(L, initials[i], T, dt);
    if (agg.times.empty()) {
      agg = tr;
      for (double& v : agg.norms) v = v * v;
    } else {
      for (std::size_t j = 0; j < agg.norms.size() && j < tr.norms.size(); ++j)
        agg.norms[j] += tr.norms[j] * tr.norms[j];
    }
  }
  for (double& v : agg.norms) v = std::sqrt(v);
  agg.fitted_rate = fit_decay_rate(agg.times, agg.norms);
  return agg;
}

}  // namespace wwstab
