#pragma once

#include <cmath>
#include <string>

#include "wwstab/params.hpp"

namespace wwstab {

/// Frequency-plane taxonomy. The six tags partition the (xi, eta) plane for a
/// fixed Params:
///
///   UH      |eta| >= 2
///   S_sing  |eta| in [A eps^2, 2), |xi| <= K eps, delta <= |eta|/|xi+ia| <= 2
///   R_reg   |eta| in [A eps^2, 2), |xi| <= K eps, |eta|/|xi+ia| < delta
///   I       the rest of the band |eta| in [A eps^2, 2)
///   L_high  |eta| < A eps^2, |xi| >= K eps
///   L_low   |eta| < A eps^2, |xi| <  K eps
///
/// Boundary equalities go to the region listed first in {UH, I, L_high,
/// L_low}; within the band the singular cone is claimed before the regular
/// corner. This is a documented convention for discrete grids; the analysis
/// regions overlap and sharp cutoffs make measure-zero sets irrelevant.
enum class RegionTag { UH, I, L_high, L_low, S_sing, R_reg };

inline std::string region_name(RegionTag t) {
  switch (t) {
    case RegionTag::UH: return "UH";
    case RegionTag::I: return "I";
    case RegionTag::L_high: return "L_high";
    case RegionTag::L_low: return "L_low";
    case RegionTag::S_sing: return "S_sing";
    case RegionTag::R_reg: return "R_reg";
  }
  return "?";
}

inline double freq_ratio(double xi, double eta, double a) {
  return std::abs(eta) / std::hypot(xi, a);
}

inline RegionTag classify_region(double xi, double eta, const Params& p) {
  double ae = std::abs(eta), ax = std::abs(xi);
  double a = p.a();
  double band_lo = p.A * p.epsilon * p.epsilon;
  if (ae >= 2.0) return RegionTag::UH;
  if (ae >= band_lo) {
    if (ax <= p.K * p.epsilon) {
      double r = freq_ratio(xi, eta, a);
      if (r >= p.delta && r <= 2.0) return RegionTag::S_sing;
      if (r < p.delta) return RegionTag::R_reg;
    }
    return RegionTag::I;
  }
  return ax >= p.K * p.epsilon ? RegionTag::L_high : RegionTag::L_low;
}

/// Indicator of the singular low-frequency cone (the pi_s multiplier):
/// |xi| <= K eps and delta <= |eta| / sqrt(xi^2 + a^2) <= 2.
inline bool in_singular_set(double xi, double eta, const Params& p) {
  if (std::abs(xi) > p.K * p.epsilon) return false;
  double r = freq_ratio(xi, eta, p.a());
  return r >= p.delta && r <= 2.0;
}

/// Indicator of the regular low-frequency complement (the pi_r multiplier):
/// {|xi| <= delta, A eps^2 <= |eta| <= 2} minus the singular cone.
inline bool in_regular_set(double xi, double eta, const Params& p) {
  double ae = std::abs(eta);
  if (std::abs(xi) > p.delta) return false;
  if (ae < p.A * p.epsilon * p.epsilon || ae > 2.0) return false;
  return !in_singular_set(xi, eta, p);
}

// sub-regions of the |eta| <= 2 band used by the symbol sign checks
inline bool in_R_xi_H(double xi, double eta, const Params& p) {
  return std::abs(xi) >= p.delta && std::abs(eta) <= 2.0;
}
inline bool in_R_xi_I(double xi, double eta, const Params& p) {
  double ax = std::abs(xi);
  return ax >= p.K * p.epsilon && ax <= p.delta && std::abs(eta) <= 2.0;
}
inline bool in_R_eta1_I(double xi, double eta, const Params& p) {
  if (std::abs(xi) > p.K * p.epsilon) return false;
  double r = freq_ratio(xi, eta, p.a());
  return r >= p.delta && std::abs(eta) <= 2.0;
}
inline bool in_R_eta2_I(double xi, double eta, const Params& p) {
  if (std::abs(xi) > p.K * p.epsilon) return false;
  double ae = std::abs(eta);
  return ae >= p.A * p.epsilon * p.epsilon && freq_ratio(xi, eta, p.a()) <= p.delta;
}

}  // namespace wwstab
