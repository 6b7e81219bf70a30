#pragma once

#include <Eigen/Dense>
#include <optional>
#include <thread>
#include <stdexcept>
#include <vector>

#include "wwstab/operator_matrix.hpp"
#include "wwstab/quantize.hpp"
#include "wwstab/soliton.hpp"
#include "wwstab/symbols.hpp"

namespace wwstab {

/// Velocity potential on the flattened strip. values(j, m) is the field at
/// (x_j, z_m) with z_0 = 0 the surface.
struct PotentialField {
  Mat values;
  bool top_trace_ok = false;
  double residual = 0.0;
};

/// Apply the flat-surface transformed Dirichlet-Neumann operator (a Fourier
/// multiplier) to samples on the line.
inline Vec apply_flat_dn(const Vec& f, double eta, double a, const Grid1D& g) {
  return apply_multiplier(g, [&](double xi) { return flat_dn_symbol(xi, eta, a); }, f);
}

/// cosh(mu (z+1))/cosh(mu), evaluated without overflow for Re mu >= 0.
inline Complex cosh_ratio(Complex mu, double z) {
  Complex e1 = std::exp(mu * z);                  // |e^{mu z}| <= 1 for z <= 0 up to Im
  Complex e2 = std::exp(-mu * (z + 2.0));         // e^{-mu(z+2)}, decaying
  Complex den = 1.0 + std::exp(-2.0 * mu);
  return (e1 + e2) / den;
}

/// Elliptic solver on the strip for one transverse frequency. The curved
/// problem is solved by preconditioned iteration against the flat operator:
/// each pass solves (d_z^2 - mu^2) per Fourier mode with the surface datum on
/// top and a no-flux bottom, with the metric terms moved to the right side.
class StripSolver {
 public:
  StripSolver(const SolitonProfile& prof, const StripGrid& sg, double a, double eta,
              bool shifted_flux = true, double tol = 1e-11, int max_iter = 80)
      : prof_(prof),
        g_(sg.x_grid),
        cheb_(sg.cheb()),
        a_(a),
        eta_(eta),
        shifted_flux_(shifted_flux),
        tol_(tol),
        max_iter_(max_iter) {
    const std::size_t n = g_.N, m = cheb_.M;
    mu2_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      Complex z(g_.xi(k), a_);
      mu2_(k) = z * z + eta_ * eta_;
    }
    // per-mode z-operators with Dirichlet top row and Neumann bottom row
    lus_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      Mat A = Mat::Zero(m, m);
      Eigen::MatrixXd dz2 = cheb_.Dz * cheb_.Dz;
      A = dz2.cast<Complex>();
      for (std::size_t i = 0; i < m; ++i) A(i, i) -= mu2_(k);
      A.row(0).setZero();
      A(0, 0) = 1.0;
      A.row(m - 1) = cheb_.Dz.row(m - 1).cast<Complex>();
      lus_.emplace_back(A);
    }
    curved_ = !prof_.flat && prof_.zeta_c.cwiseAbs().maxCoeff() > 0.0;
    if (curved_) {
      // metric coefficient grids, x by z
      one_zeta_.resize(n);
      inv_one_zeta_.resize(n);
      dz_surf_.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        one_zeta_(j) = 1.0 + prof_.zeta_c(j);
        inv_one_zeta_(j) = 1.0 / one_zeta_(j);
        dz_surf_(j) = prof_.dzeta_c(j);
      }
      zp1_dz_.resize(n, m);
      c2_.resize(n, m);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < m; ++q) {
          double zp1 = cheb_.z(q) + 1.0;
          zp1_dz_(j, q) = zp1 * dz_surf_(j);
          c2_(j, q) = (1.0 + zp1 * zp1 * dz_surf_(j) * dz_surf_(j)) / (one_zeta_(j) * one_zeta_(j));
        }
    }
  }

  const Grid1D& grid() const { return g_; }
  const ChebGrid& cheb() const { return cheb_; }

  /// Flat-surface harmonic extension of Fourier coefficients c.
  Mat extend_flat_coeffs(const Vec& c) const {
    const std::size_t n = g_.N, m = cheb_.M;
    Mat out(n, m);
    for (std::size_t k = 0; k < n; ++k) {
      Complex mu = branch_sqrt(mu2_(k));
      for (std::size_t q = 0; q < m; ++q) out(k, q) = c(k) * cosh_ratio(mu, cheb_.z(q));
    }
    return out;
  }

  /// Solve the strip problem for surface samples f.
  PotentialField solve(const Vec& f) const {
    const std::size_t n = g_.N, m = cheb_.M;
    Vec c = g_.to_coeffs(f);
    Mat psi_hat = extend_flat_coeffs(c);  // coefficient-in-x rep, n x m
    PotentialField out;
    if (!curved_) {
      Mat psi = psi_hat;
      g_.to_samples_inplace(psi);
      out.values = psi;
      out.top_trace_ok = true;
      out.residual = 0.0;
      return out;
    }
    double den = std::max(1e-300, field_scale(psi_hat));
    double res = 0.0;
    for (int it = 0; it < max_iter_; ++it) {
      Mat psi = psi_hat;
      g_.to_samples_inplace(psi);
      Mat r = curved_residual(psi);  // samples of (Delta_a^g - eta^2) psi
      g_.to_coeffs_inplace(r);
      // interior rows only; surface and bottom rows are exact by construction
      double rnorm = 0.0;
      for (std::size_t q = 1; q + 1 < m; ++q) rnorm += r.col(q).squaredNorm();
      res = std::sqrt(rnorm) / den;
      if (res <= tol_) break;
      // flat correction with zero surface datum
      for (std::size_t k = 0; k < n; ++k) {
        Vec rhs(m);
        rhs(0) = 0.0;
        for (std::size_t q = 1; q + 1 < m; ++q) rhs(q) = -r(k, q);
        rhs(m - 1) = 0.0;
        Vec d = lus_[k].solve(rhs);
        psi_hat.row(k) += d.transpose();
      }
    }
    Mat psi = psi_hat;
    g_.to_samples_inplace(psi);
    out.values = psi;
    out.residual = res;
    out.top_trace_ok = res <= 100.0 * tol_;
    return out;
  }

  /// Boundary flux of the solved potential (the transformed operator). The
  /// horizontal derivative is (d/dx - a) by default; shifted_flux = false
  /// switches to the plain derivative for comparison.
  Vec flux(const PotentialField& field) const {
    const std::size_t n = g_.N;
    Vec top = field.values.col(0);
    Vec dx_top = shifted_flux_ ? xderiv_vec(top) : g_.derivative(top);
    Vec dz_top = (field.values * cheb_.Dz.row(0).transpose().cast<Complex>());
    Vec out(n);
    for (std::size_t j = 0; j < n; ++j) {
      double dz = curved_ ? dz_surf_(j) : 0.0;
      double oz = curved_ ? one_zeta_(j) : 1.0;
      out(j) = -dz * dx_top(j) + (1.0 + dz * dz) / oz * dz_top(j);
    }
    return out;
  }

  Vec apply_dn(const Vec& f) const { return flux(solve(f)); }

  /// Dense matrix of the operator in the coefficient representation. Columns
  /// may be restricted to a subset of Fourier modes (others zero). Columns are
  /// independent solves and run on two threads.
  Mat dn_matrix(const std::vector<std::size_t>* mode_subset = nullptr) const {
    const std::size_t n = g_.N;
    Mat A = Mat::Zero(n, n);
    std::vector<std::size_t> cols;
    if (mode_subset) {
      cols = *mode_subset;
    } else {
      cols.resize(n);
      for (std::size_t k = 0; k < n; ++k) cols[k] = k;
    }
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::size_t k = cols[i];
        Vec c = Vec::Zero(n);
        c(k) = 1.0;
        Vec col = apply_dn(g_.to_samples(c));
        A.col(k) = g_.to_coeffs(col);
      }
    };
    std::size_t half = cols.size() / 2;
    std::thread t(work, 0, half);
    work(half, cols.size());
    t.join();
    return A;
  }

 private:
  // size of the flat elliptic terms, used as the relative-residual scale
  double field_scale(const Mat& psi_hat) const {
    double s = 0.0;
    for (std::size_t k = 0; k < g_.N; ++k) {
      double w = std::abs(mu2_(k)) + 1.0;
      s += w * w * psi_hat.row(k).squaredNorm();
    }
    return std::sqrt(s);
  }

  Vec xderiv_vec(const Vec& f) const {
    Vec c = g_.to_coeffs(f);
    for (std::size_t k = 0; k < g_.N; ++k) c(k) *= Complex(-a_, g_.xi(k));
    return g_.to_samples(c);
  }

  Mat xderiv(const Mat& F) const {  // (d/dx - a) columnwise in x
    Mat c = F;
    g_.to_coeffs_inplace(c);
    for (std::size_t k = 0; k < g_.N; ++k) c.row(k) *= Complex(-a_, g_.xi(k));
    g_.to_samples_inplace(c);
    return c;
  }

  /// (Delta_a^g - eta^2) psi on samples; metric terms assembled as
  /// (1/(1+zeta)) div_a((1+zeta) g grad_a psi).
  Mat curved_residual(const Mat& psi) const {
    Mat P = xderiv(psi);
    Mat Q = psi * cheb_.Dz.transpose().cast<Complex>();
    Mat G1 = P, G2 = Q;
    for (std::size_t j = 0; j < g_.N; ++j)
      for (std::size_t q = 0; q < cheb_.M; ++q) {
        Complex p = P(j, q), s = Q(j, q);
        G1(j, q) = one_zeta_(j) * p - zp1_dz_(j, q) * s;
        G2(j, q) = -zp1_dz_(j, q) * p + one_zeta_(j) * c2_(j, q) * s;
      }
    Mat div = xderiv(G1) + G2 * cheb_.Dz.transpose().cast<Complex>();
    for (std::size_t j = 0; j < g_.N; ++j) div.row(j) *= inv_one_zeta_(j);
    return div - eta_ * eta_ * psi;
  }

  SolitonProfile prof_;
  Grid1D g_;
  ChebGrid cheb_;
  double a_, eta_;
  bool shifted_flux_;
  double tol_;
  int max_iter_;
  bool curved_ = false;
  Vec mu2_;
  std::vector<Eigen::PartialPivLU<Mat>> lus_;
  RealVec one_zeta_, inv_one_zeta_, dz_surf_;
  Eigen::MatrixXd zp1_dz_, c2_;
};

inline PotentialField solve_elliptic_strip(const Vec& f, double eta, double a,
                                           const SolitonProfile& prof, const StripGrid& sg) {
  return StripSolver(prof, sg, a, eta).solve(f);
}

inline Vec apply_dn(const Vec& f, double eta, double a, const SolitonProfile& prof,
                    const StripGrid& sg) {
  return StripSolver(prof, sg, a, eta).apply_dn(f);
}

enum class DnApproxKind { principal, modified, first_order };

/// Quantization of the pseudodifferential approximations of the operator.
inline OperatorMatrix dn_approx(double eta, const Params& p, const SolitonProfile& prof,
                                DnApproxKind kind, const Grid1D& g) {
  double a = p.a();
  if ((kind == DnApproxKind::principal || kind == DnApproxKind::modified) && std::abs(eta) < 2.0)
    throw std::invalid_argument("dn_approx: principal/modified valid for |eta| >= 2");
  if (kind == DnApproxKind::first_order && std::abs(eta) > 2.0)
    throw std::invalid_argument("dn_approx: first_order valid for |eta| <= 2");
  OperatorMatrix out;
  out.grid = g;
  out.src = NormTag{NormKind::Hhalf_star, eta, a};
  out.dst = NormTag{NormKind::L2, eta, a};
  switch (kind) {
    case DnApproxKind::principal:
      out.entries = quantize(g, [&](double x, double xi) { return lambda1_zc(x, xi, eta, a, prof); });
      break;
    case DnApproxKind::modified:
      out.entries = quantize(g, [&](double x, double xi) { return lambda1_mod(x, xi, eta, a, prof); });
      break;
    case DnApproxKind::first_order:
      out.entries = quantize(g, [&](double x, double xi) {
        Complex mu = mu_a(xi, eta, a);
        Complex t = tanh_stable(mu);
        Complex mu2 = mu * mu;
        return z_tanh_z(mu) + prof.zeta(x) * mu2 * (t * t - 1.0);
      });
      break;
  }
  return out;
}

}  // namespace wwstab
