#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wwstab/regions.hpp"
#include "wwstab/symbols.hpp"

namespace wwstab {

struct SweepReport {
  std::string check_id;
  std::string grid_description;
  double min_margin = std::numeric_limits<double>::infinity();
  double worst_x = 0.0, worst_xi = 0.0, worst_eta = 0.0;
  std::size_t violations = 0;
  std::size_t points = 0;
  bool pass = false;
};

/// Axis values for a sweep over (x, xi, eta). Checks that ignore x take a
/// single dummy x value.
struct Grid3D {
  std::vector<double> xs{0.0};
  std::vector<double> xis;
  std::vector<double> etas;
};

/// Uniform spacing up to |xi| = 10, logarithmic beyond; symmetric about 0.
/// Samples falling within 1e-6 of a branch point of mu_a are nudged away.
inline std::vector<double> make_freq_axis(double lo, double hi, std::size_t n,
                                          bool symmetric = true, double branch_guard = 0.0) {
  std::vector<double> vals;
  if (n == 0) return vals;
  double cap = std::min(hi, 10.0);
  std::size_t n_lin = hi <= 10.0 ? n : std::max<std::size_t>(n / 2, 2);
  for (std::size_t i = 0; i < n_lin; ++i)
    vals.push_back(lo + (cap - lo) * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n_lin - 1, 1)));
  if (hi > 10.0) {
    std::size_t n_log = n - n_lin;
    for (std::size_t i = 1; i <= n_log; ++i)
      vals.push_back(10.0 * std::pow(hi / 10.0, static_cast<double>(i) / static_cast<double>(n_log)));
  }
  if (branch_guard > 0.0)
    for (auto& v : vals)
      if (std::abs(std::abs(v) - branch_guard) < 1e-6) v += 2e-6;
  if (symmetric) {
    std::vector<double> sym;
    for (auto it = vals.rbegin(); it != vals.rend(); ++it)
      if (*it != 0.0) sym.push_back(-*it);
    for (double v : vals) sym.push_back(v);
    return sym;
  }
  return vals;
}

namespace detail {

inline bool check_region_ok(const std::string& id, double xi, double eta, const Params& p) {
  if (id == "lem-ev-HT" || id == "im-three-fifths" || id == "g-eta-bounded")
    return std::abs(eta) >= 2.0;
  if (id == "lem-sym-Ga0-UH") return in_R_xi_H(xi, eta, p) || in_R_eta1_I(xi, eta, p);
  if (id == "lem-sym-Ga0-I") return in_R_xi_I(xi, eta, p) || in_R_eta2_I(xi, eta, p);
  if (id == "relambdapm") return true;
  if (id == "lampm1-minus") return std::abs(eta) <= 2.0;
  throw std::invalid_argument("sweep_inequality: unknown check_id '" + id + "'");
}

inline double check_margin(const std::string& id, double x, double xi, double eta,
                           const Params& p, const SolitonProfile& prof) {
  double a = p.a();
  if (id == "lem-ev-HT") {
    double rp = lambda1_pm(x, xi, eta, p, prof, Sign::plus).real();
    double rm = lambda1_pm(x, xi, eta, p, prof, Sign::minus).real();
    return -a / 4.0 - std::max(rp, rm);
  }
  if (id == "im-three-fifths") {
    Complex root = branch_sqrt(lambda1_mod(x, xi, eta, a, prof));
    return 0.6 * a - std::abs(root.imag());
  }
  if (id == "lem-sym-Ga0-UH" || id == "lem-sym-Ga0-I") {
    double val = branch_sqrt(-flat_dn_symbol(xi, eta, a)).real();
    double bound = sqrt_neg_dn_upper_bound(xi, eta, a);
    return std::min(bound - val, val);
  }
  if (id == "relambdapm") {
    double rp = lambda0_pm(xi, eta, p, Sign::plus).real();
    double rm = lambda0_pm(xi, eta, p, Sign::minus).real();
    return -a * p.epsilon * p.epsilon / 4.0 - std::max(rp, rm);
  }
  if (id == "lampm1-minus") {
    // Re(lambda - lambda0_minus) >= a - beta eps^3 at the worst lambda on the
    // boundary of the resolvent half-plane
    double worst_re_lambda = -p.beta * std::pow(p.epsilon, 3);
    double lhs = worst_re_lambda - lambda0_pm(xi, eta, p, Sign::minus).real();
    return lhs - (a - p.beta * std::pow(p.epsilon, 3));
  }
  if (id == "g-eta-bounded") {
    double m = std::abs(g_eta_symbol(x, xi, eta, p, prof));
    return std::min(2.0 - m, m - 0.5);
  }
  throw std::invalid_argument("sweep_inequality: unknown check_id '" + id + "'");
}

}  // namespace detail

/// Evaluate one of the pointwise symbol inequalities over a grid. margin >= 0
/// at every point means the inequality holds; the report carries the worst
/// point. Grid points outside the check's region are an error unless
/// `filter_region` is set, in which case they are skipped. Deterministic:
/// plain loop order, no reduction races.
inline SweepReport sweep_inequality(const std::string& check_id, const Grid3D& grid,
                                    const Params& p, const SolitonProfile& prof,
                                    bool filter_region = false) {
  SweepReport rep;
  rep.check_id = check_id;
  rep.grid_description = std::to_string(grid.xs.size()) + "x" + std::to_string(grid.xis.size()) +
                         "x" + std::to_string(grid.etas.size()) + " (x,xi,eta)" +
                         (filter_region ? ", region-filtered" : "");
  for (double eta : grid.etas)
    for (double xi : grid.xis) {
      if (!detail::check_region_ok(check_id, xi, eta, p)) {
        if (filter_region) continue;
        throw std::invalid_argument("sweep_inequality: grid point (xi=" + std::to_string(xi) +
                                    ", eta=" + std::to_string(eta) + ") outside region of '" +
                                    check_id + "'");
      }
      for (double x : grid.xs) {
        double m = detail::check_margin(check_id, x, xi, eta, p, prof);
        ++rep.points;
        if (m < 0.0) ++rep.violations;
        if (m < rep.min_margin) {
          rep.min_margin = m;
          rep.worst_x = x;
          rep.worst_xi = xi;
          rep.worst_eta = eta;
        }
      }
    }
  rep.pass = (rep.violations == 0) && rep.min_margin >= 0.0 && rep.points > 0;
  return rep;
}

}  // namespace wwstab
