#pragma once

#include <string>
#include <vector>

#include "wwstab/projection.hpp"
#include "wwstab/waveop.hpp"

namespace wwstab {

struct ResolventReport {
  std::string band;
  std::vector<Complex> lambda_grid;
  std::vector<double> norms;  // sup over the band's eta samples, per lambda
  double sup_norm = 0.0;
  Complex worst_lambda;
  double predicted_bound = 0.0;
  bool pass = false;
  bool eigenvalue_detected = false;
};

/// Lambda samples in the resolvent half-plane: rectangle
/// Re in [-beta eps^3 / 2, re_max], |Im| <= im_max.
inline std::vector<Complex> lambda_rectangle(const Params& p, double re_max, double im_max,
                                             std::size_t n_re, std::size_t n_im) {
  std::vector<Complex> out;
  double re_min = -0.5 * p.beta * std::pow(p.epsilon, 3);
  for (std::size_t i = 0; i < n_re; ++i) {
    double re = n_re == 1 ? re_min : re_min + (re_max - re_min) * i / double(n_re - 1);
    for (std::size_t j = 0; j < n_im; ++j) {
      double im = n_im == 1 ? 0.0 : -im_max + 2.0 * im_max * j / double(n_im - 1);
      out.emplace_back(re, im);
    }
  }
  return out;
}

/// Resolvent-norm sweep of the assembled operator over a lambda grid and a
/// set of transverse frequencies. Norms are measured in the X = L2 x H^{1/2}_*
/// weights; with `project` the resonant pair at each eta is neutralized
/// through the oblique projector from the traced curve.
inline ResolventReport resolvent_sweep(const std::vector<Complex>& lambda_grid,
                                       const std::string& band, const Params& p,
                                       const SolitonProfile& prof, const StripGrid& sg,
                                       const std::vector<double>& etas, bool project,
                                       const ModeCurve* curve = nullptr) {
  if (band == "L_low" && !project)
    throw std::invalid_argument("resolvent_sweep: the low band requires projection");
  if (project && curve == nullptr)
    throw std::invalid_argument("resolvent_sweep: projection requested without a mode curve");
  ResolventReport rep;
  rep.band = band;
  rep.lambda_grid = lambda_grid;
  rep.norms.assign(lambda_grid.size(), 0.0);

  double eps3 = std::pow(p.epsilon, 3);
  if (band == "UH")
    rep.predicted_bound = 1e3 / p.epsilon;
  else if (band == "I")
    rep.predicted_bound = 1e3 / (p.A * eps3);
  else
    rep.predicted_bound = 1e3;

  for (double eta : etas) {
    BlockOperator L = assemble_La(eta, p, prof, sg);
    RealVec w = xnorm_weights(L.grid, eta, p.a());
    Mat Pw;
    bool has_proj = false;
    if (project) {
      auto idx = curve->index_of(eta);
      if (idx.has_value() && eta != 0.0) {
        EtaBasis B = make_eta_basis(L.grid, eta, curve->modes[*idx]);
        Pw = B.P;
        for (Eigen::Index i = 0; i < Pw.rows(); ++i) Pw.row(i) *= w(i);
        for (Eigen::Index j = 0; j < Pw.cols(); ++j) Pw.col(j) /= w(j);
        has_proj = true;
      }
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      Mat B = xnorm_weighted_shifted(L, lambda_grid[i]);
      if (has_proj) {
        double stiff = 100.0 * (1.0 + std::abs(lambda_grid[i]));
        Mat Q = Mat::Identity(B.rows(), B.cols()) - Pw;
        B = Q * B * Q + stiff * Pw;
      }
      double smin = sigma_min_weighted(B);
      double nrm;
      if (smin <= 1e-13) {
        rep.eigenvalue_detected = true;
        nrm = std::numeric_limits<double>::infinity();
      } else {
        nrm = 1.0 / smin;
      }
      rep.norms[i] = std::max(rep.norms[i], nrm);
      if (nrm > rep.sup_norm) {
        rep.sup_norm = nrm;
        rep.worst_lambda = lambda_grid[i];
      }
    }
  }
  rep.pass = rep.sup_norm <= rep.predicted_bound;
  return rep;
}

}  // namespace wwstab
