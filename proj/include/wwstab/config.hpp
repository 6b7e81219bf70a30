#pragma once

#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "wwstab/params.hpp"

namespace wwstab {

using Json = nlohmann::json;

/// Driver configuration. Unknown keys anywhere in the file are rejected.
struct Config {
  Params params;
  double X = 500.0;
  std::size_t N = 256;
  std::size_t M = 16;
  std::vector<double> eta_samples;
  double lambda_re_max = 1.0;
  double lambda_im_max = 4.0;
  std::size_t lambda_n_re = 3;
  std::size_t lambda_n_im = 9;
  std::vector<std::string> checks;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  int workers = 1;
  Json snapshot;
};

namespace configdetail {

inline void reject_unknown(const Json& j, const std::set<std::string>& known,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

}  // namespace configdetail

inline Config parse_config(const Json& j) {
  Config c;
  configdetail::reject_unknown(
      j, {"params", "grids", "checks", "output_dir", "seed", "workers"}, "top level");
  if (j.contains("params")) {
    const Json& p = j.at("params");
    configdetail::reject_unknown(
        p, {"epsilon", "a_hat", "beta", "A", "K", "delta", "eta_hat0"}, "params");
    double eps = p.value("epsilon", 0.05);
    double ahat = p.value("a_hat", 0.4);
    c.params = Params::make(eps, ahat);
    if (p.contains("beta")) c.params.beta = p.at("beta").get<double>();
    if (p.contains("A")) c.params.A = p.at("A").get<double>();
    if (p.contains("K")) c.params.K = p.at("K").get<double>();
    if (p.contains("delta")) c.params.delta = p.at("delta").get<double>();
    if (p.contains("eta_hat0")) c.params.eta_hat0 = p.at("eta_hat0").get<double>();
    c.params.validate();
  }
  if (j.contains("grids")) {
    const Json& g = j.at("grids");
    configdetail::reject_unknown(g, {"X", "N", "M", "eta_samples", "lambda_rect"}, "grids");
    c.X = g.value("X", c.X);
    c.N = g.value("N", c.N);
    c.M = g.value("M", c.M);
    if (g.contains("eta_samples")) c.eta_samples = g.at("eta_samples").get<std::vector<double>>();
    if (g.contains("lambda_rect")) {
      const Json& r = g.at("lambda_rect");
      configdetail::reject_unknown(r, {"re_max", "im_max", "n_re", "n_im"}, "lambda_rect");
      c.lambda_re_max = r.value("re_max", c.lambda_re_max);
      c.lambda_im_max = r.value("im_max", c.lambda_im_max);
      c.lambda_n_re = r.value("n_re", c.lambda_n_re);
      c.lambda_n_im = r.value("n_im", c.lambda_n_im);
    }
  }
  if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
  c.output_dir = j.value("output_dir", c.output_dir);
  c.seed = j.value("seed", c.seed);
  c.workers = j.value("workers", c.workers);
  if (c.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  c.snapshot = j;
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace wwstab
