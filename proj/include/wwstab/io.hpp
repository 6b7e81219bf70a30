#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "wwstab/modes.hpp"
#include "wwstab/semigroup.hpp"

namespace wwstab {

inline void write_mode_curve_csv(const ModeCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "eta,re_lambda,im_lambda,residual\n";
  out << std::setprecision(16);
  for (std::size_t i = 0; i < curve.etas.size(); ++i)
    out << curve.etas[i] << "," << curve.lambdas[i].real() << "," << curve.lambdas[i].imag() << ","
        << curve.fitted.fit_residual << "\n";
}

inline void write_decay_csv(const DecayTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "t,norm\n";
  out << std::setprecision(16);
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    out << trace.times[i] << "," << trace.norms[i] << "\n";
}

/// Binary container for a dense complex matrix: magic, rows, cols, norm tags,
/// a, eta, then row-major interleaved re/im doubles.
inline void dump_operator_matrix(const OperatorMatrix& A, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  const char magic[8] = {'W', 'W', 'O', 'P', 'M', 'A', 'T', '1'};
  out.write(magic, 8);
  std::uint32_t rows = static_cast<std::uint32_t>(A.entries.rows());
  std::uint32_t cols = static_cast<std::uint32_t>(A.entries.cols());
  std::uint32_t src = static_cast<std::uint32_t>(A.src.kind);
  std::uint32_t dst = static_cast<std::uint32_t>(A.dst.kind);
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  out.write(reinterpret_cast<const char*>(&src), 4);
  out.write(reinterpret_cast<const char*>(&dst), 4);
  double a = A.src.a, eta = A.src.eta;
  out.write(reinterpret_cast<const char*>(&a), 8);
  out.write(reinterpret_cast<const char*>(&eta), 8);
  for (Eigen::Index i = 0; i < A.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < A.entries.cols(); ++j) {
      double re = A.entries(i, j).real(), im = A.entries(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
}

inline OperatorMatrix load_operator_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::string(magic, 8) != "WWOPMAT1") throw std::runtime_error("bad matrix container magic");
  std::uint32_t rows, cols, src, dst;
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  in.read(reinterpret_cast<char*>(&src), 4);
  in.read(reinterpret_cast<char*>(&dst), 4);
  OperatorMatrix A;
  double a, eta;
  in.read(reinterpret_cast<char*>(&a), 8);
  in.read(reinterpret_cast<char*>(&eta), 8);
  A.src = NormTag{static_cast<NormKind>(src), eta, a};
  A.dst = NormTag{static_cast<NormKind>(dst), eta, a};
  A.entries.resize(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) {
      double re, im;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      A.entries(i, j) = Complex(re, im);
    }
  return A;
}

}  // namespace wwstab
