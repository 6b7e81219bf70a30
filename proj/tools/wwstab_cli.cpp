// Batch driver for the water-wave transverse-stability laboratory: runs
// verification checks, one JSON report per check, CSV side files for curves
// and traces. See the README for the check vocabulary and the config schema.

#include <CLI11.hpp>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "wwstab/config.hpp"
#include "wwstab/energy.hpp"
#include "wwstab/io.hpp"
#include "wwstab/kp_bridge.hpp"
#include "wwstab/resolvent.hpp"
#include "wwstab/sweeps.hpp"

namespace fs = std::filesystem;
using namespace wwstab;

namespace {

Json params_json(const Params& p) {
  return Json{{"epsilon", p.epsilon}, {"a_hat", p.a_hat}, {"beta", p.beta},
              {"A", p.A},             {"K", p.K},         {"delta", p.delta},
              {"eta_hat0", p.eta_hat0}};
}

std::vector<std::string> citations_for(const std::string& id) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"symbols/lem-ev-HT", {"lem-ev-HT"}},
      {"symbols/im-three-fifths", {"Im-lambda1"}},
      {"symbols/lem-sym-Ga0-UH", {"lem-sym-Ga0"}},
      {"symbols/lem-sym-Ga0-I", {"lem-sym-Ga0"}},
      {"symbols/relambdapm", {"Relambdapm"}},
      {"symbols/lampm1-minus", {"lem-lampm1"}},
      {"symbols/g-eta-bounded", {"lem-g"}},
      {"soliton/norms", {"v0-norms"}},
      {"dn/flat-equivalence", {"def-e0f"}},
      {"dn/modified-error", {"lem-error"}},
      {"modes/ls-coefficients", {"Lbda1ep", "kappa0"}},
      {"modes/trace", {"defU-base", "Lbda1ep"}},
      {"modes/kernel", {"id-twomodes"}},
      {"projection/algebra", {"defbasis-dual"}},
      {"resolvent/UH", {"prop-UTH"}},
      {"resolvent/I", {"prop-ITF"}},
      {"resolvent/L_low", {"resolbdd-lowtran"}},
      {"semigroup/decay", {"semigroup"}},
      {"kp2/modes", {"resomode-kp"}},
      {"kp2/resolvent", {"revert-Lkp"}},
      {"kp2/bridge", {"lem-KPapprox", "G0-lowlow"}},
      {"energy/es-dissipation", {"es-I1"}},
      {"energy/commutator", {"lem-commutator"}},
  };
  auto it = table.find(id);
  return it == table.end() ? std::vector<std::string>{} : it->second;
}

struct CheckContext {
  Config cfg;
  std::string dump_path;
  std::string csv_dir;
};

std::vector<double> default_band_etas(const std::string& band, const Params& p) {
  if (band == "UH") return {2.0, 3.0, 5.0, 8.0};
  if (band == "I") {
    double lo = p.A * p.epsilon * p.epsilon;
    return {lo, 0.05, 0.3, 1.0, 1.9};
  }
  double band_top = p.epsilon * p.epsilon * p.eta_hat0;
  return {band_top * 0.25, band_top * 0.5, band_top};
}

Json run_one_check(const std::string& id, const CheckContext& ctx) {
  const Config& c = ctx.cfg;
  const Params& p = c.params;
  Json result;
  bool pass = true;

  if (id.rfind("symbols/", 0) == 0) {
    std::string check = id.substr(8);
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    SolitonProfile prof = build_profile(p.epsilon, g);
    Grid3D grid;
    grid.xs = {0.0, 1.0 / p.epsilon, 5.0 / p.epsilon, 20.0 / p.epsilon};
    if (check == "lem-ev-HT" || check == "im-three-fifths" || check == "g-eta-bounded") {
      grid.xis = make_freq_axis(0.0, 20.0, 50);
      grid.etas = make_freq_axis(2.0, 10.0, 25);
    } else if (check == "relambdapm") {
      grid.xis = make_freq_axis(0.0, 50.0, 60, true, p.a());
      grid.etas = make_freq_axis(0.0, 50.0, 60, true, p.a());
    } else if (check == "lampm1-minus") {
      grid.xis = make_freq_axis(0.0, 30.0, 50, true, p.a());
      grid.etas = make_freq_axis(0.0, 2.0, 30, true, p.a());
    } else if (check == "lem-sym-Ga0-UH" || check == "lem-sym-Ga0-I") {
      grid.xis = make_freq_axis(0.0, 1.0, 60, true, p.a());
      grid.etas = make_freq_axis(0.0, 2.0, 40, true, p.a());
    } else {
      throw std::invalid_argument("unknown symbols check '" + check + "'");
    }
    bool filtered = check.rfind("lem-sym-Ga0", 0) == 0;
    SweepReport rep = sweep_inequality(check, grid, p, prof, filtered);
    result = Json{{"grid", rep.grid_description},
                  {"min_margin", rep.min_margin},
                  {"worst_point", {{"x", rep.worst_x}, {"xi", rep.worst_xi}, {"eta", rep.worst_eta}}},
                  {"violations", rep.violations},
                  {"points", rep.points}};
    pass = rep.pass;
  } else if (id == "soliton/norms") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    ProfileNorms n = profile_norms(p.epsilon, g);
    double l1_exact = 4.0 * std::sqrt(3.0) / 3.0, l2_exact = 8.0 * std::sqrt(3.0) / 9.0;
    result = {{"l1_v0", n.l1_v0},
              {"l2sq_v0", n.l2sq_v0},
              {"l1_error", std::abs(n.l1_v0 - l1_exact)},
              {"l2sq_error", std::abs(n.l2sq_v0 - l2_exact)}};
    pass = std::abs(n.l1_v0 - l1_exact) < 1e-10 && std::abs(n.l2sq_v0 - l2_exact) < 1e-10;
  } else if (id == "dn/flat-equivalence") {
    Grid1D g(20.0, 512);
    StripGrid sg(g, 32);
    SolitonProfile flat = zero_profile(g, p.epsilon);
    Vec f(g.N);
    for (std::size_t j = 0; j < g.N; ++j) f(j) = std::exp(-std::pow(g.x(j) / 2.0, 2));
    Vec via = apply_dn(f, 1.3, p.a(), flat, sg);
    Vec direct = apply_flat_dn(f, 1.3, p.a(), g);
    double rel = g.l2_norm(via - direct) / g.l2_norm(direct);
    result = {{"relative_error", rel}, {"N", 512}, {"M", 32}};
    pass = rel <= 1e-8;
  } else if (id == "dn/modified-error") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    StripGrid sg(g, std::max<std::size_t>(c.M, 24));
    SolitonProfile prof = build_profile(p.epsilon, g);
    double eta = 3.0;
    Mat G = StripSolver(prof, sg, p.a(), eta).dn_matrix();
    OperatorMatrix approx = dn_approx(eta, p, prof, DnApproxKind::modified, g);
    OperatorMatrix diff;
    diff.grid = g;
    diff.entries = G - approx.entries;
    diff.src = diff.dst = NormTag{NormKind::L2, eta, p.a()};
    double err = operator_norm(diff, c.seed);
    if (!ctx.dump_path.empty()) {
      OperatorMatrix gm;
      gm.grid = g;
      gm.entries = G;
      gm.src = NormTag{NormKind::Hhalf_star, eta, p.a()};
      gm.dst = NormTag{NormKind::L2, eta, p.a()};
      dump_operator_matrix(gm, ctx.dump_path);
      result["dump"] = ctx.dump_path;
    }
    result["operator_error"] = err;
    result["eps2"] = p.epsilon * p.epsilon;
    pass = err <= 100.0 * p.epsilon * p.epsilon;
  } else if (id == "modes/ls-coefficients") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    LsCoefficients lc = ls_coefficients(p, g);
    result = {{"Lambda1", lc.Lambda1}, {"Lambda2", lc.Lambda2}, {"kappa0", lc.kappa0}};
    pass = std::abs(lc.Lambda1 - 1.0 / std::sqrt(3.0)) < 1e-10 &&
           std::abs(lc.Lambda2 - 2.0 * std::sqrt(3.0) / 9.0) < 1e-9 &&
           std::abs(lc.kappa0 + std::sqrt(3.0) / 9.0) < 1e-9;
  } else if (id == "modes/trace" || id == "projection/algebra") {
    double X = std::max(c.X, 20.0 / p.a());
    Grid1D g(X, std::max<std::size_t>(c.N, 512));
    StripGrid sg(g, c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    std::vector<double> etas = c.eta_samples;
    if (etas.empty()) {
      double band = p.epsilon * p.epsilon * p.eta_hat0;
      etas.push_back(0.0);
      for (int i = 1; i <= 8; ++i) etas.push_back(0.5 * band * i / 8.0);
    }
    ModeCurve curve = trace_resonant_modes(p, etas, prof, sg);
    if (id == "modes/trace") {
      if (!ctx.csv_dir.empty()) write_mode_curve_csv(curve, ctx.csv_dir + "/mode_curve.csv");
      double l1sq = curve.fitted.Lambda1 * curve.fitted.Lambda1;
      result = {{"Lambda1", curve.fitted.Lambda1},
                {"Lambda2", curve.fitted.Lambda2},
                {"Lambda1_sq", l1sq},
                {"kernel_split", curve.fitted.kernel_split},
                {"fit_residual", curve.fitted.fit_residual}};
      pass = std::abs(l1sq - 1.0 / 3.0) < 0.15 && std::abs(curve.fitted.Lambda2 - 0.38490) < 0.15;
    } else {
      double band = p.epsilon * p.epsilon * p.eta_hat0;
      ProjectorPair pp = spectral_projection(band, curve, p, g);
      double worst_bio = 0.0, worst_idem = 0.0;
      for (const EtaBasis& B : pp.bands) {
        worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g1, B.g2s, g, B.eta)));
        worst_bio = std::max(worst_bio, std::abs(bracket_ya(B.g1, B.g1s, g, B.eta) - 1.0));
        Mat d = B.P * B.P - B.P;
        worst_idem = std::max(worst_idem, d.cwiseAbs().maxCoeff());
      }
      result = {{"worst_biorthogonality", worst_bio}, {"worst_idempotency", worst_idem}};
      pass = worst_bio < 1e-6 && worst_idem < 1e-6;
    }
  } else if (id == "modes/kernel") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    StripGrid sg(g, c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    KernelCheck kc = kernel_check(p, prof, sg);
    result = {{"res0", kc.res0}, {"res1", kc.res1}, {"vacuous", kc.vacuous}};
    pass = kc.vacuous || kc.res0 <= 10.0 * p.epsilon * p.epsilon;
  } else if (id.rfind("resolvent/", 0) == 0) {
    std::string band = id.substr(10);
    double X = band == "L_low" ? std::max(c.X, 20.0 / p.a()) : std::max(c.X, 25.0 / p.epsilon);
    Grid1D g(X, c.N);
    StripGrid sg(g, band == "UH" ? std::max<std::size_t>(c.M, 32) : c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    std::vector<double> etas = c.eta_samples.empty() ? default_band_etas(band, p) : c.eta_samples;
    std::vector<Complex> lams =
        lambda_rectangle(p, c.lambda_re_max, c.lambda_im_max, c.lambda_n_re, c.lambda_n_im);
    ModeCurve curve;
    const ModeCurve* curve_ptr = nullptr;
    if (band == "L_low") {
      std::vector<double> trace_etas{0.0};
      for (double e : etas) trace_etas.push_back(e);
      curve = trace_resonant_modes(p, trace_etas, prof, sg);
      curve_ptr = &curve;
    }
    ResolventReport rep =
        resolvent_sweep(lams, band, p, prof, sg, etas, band == "L_low", curve_ptr);
    result = {{"band", rep.band},
              {"sup_norm", rep.sup_norm},
              {"predicted_bound", rep.predicted_bound},
              {"worst_lambda", {rep.worst_lambda.real(), rep.worst_lambda.imag()}},
              {"eigenvalue_detected", rep.eigenvalue_detected}};
    pass = rep.pass;
  } else if (id == "semigroup/decay") {
    double X = std::max(c.X, 20.0 / p.a());
    Grid1D g(X, std::max<std::size_t>(c.N, 256));
    StripGrid sg(g, c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    double band = p.epsilon * p.epsilon * p.eta_hat0;
    std::vector<double> etas{0.0, 0.5 * band, band};
    ModeCurve curve = trace_resonant_modes(p, etas, prof, sg);
    double eta = band;
    auto idx = curve.index_of(eta);
    BlockOperator L = assemble_La(eta, p, prof, sg);
    Mat Pref = refined_pair_projector(L.entries, curve.lambdas[*idx], curve.modes[*idx], g);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> nd;
    Vec u(2 * g.N);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));
    Vec q = u - Pref * u;
    double T = 2.5 * 8.0 / (p.a_hat * std::pow(p.epsilon, 3));
    DecayTrace tr = semigroup_run(L, q, T, 0.25);
    if (!ctx.csv_dir.empty()) write_decay_csv(tr, ctx.csv_dir + "/decay.csv");
    double floor_rate = -p.a_hat * std::pow(p.epsilon, 3) / 8.0;
    result = {{"fitted_rate", tr.fitted_rate}, {"rate_floor", floor_rate}, {"T", T}};
    pass = tr.fitted_rate <= floor_rate;
  } else if (id == "kp2/modes") {
    Grid1D g(80.0, 1024);
    double eta = c.eta_samples.empty() ? 0.1 : c.eta_samples.front();
    KpModes m = explicit_modes(eta, 0.3, g);
    result = {{"eta", eta}, {"lambda_kp", {m.lambda_kp.real(), m.lambda_kp.imag()}}};
    pass = m.lambda_kp.real() < 0.0;
    if (!ctx.csv_dir.empty()) {
      std::ofstream csv(ctx.csv_dir + "/kp_eigencurve.csv");
      csv << "eta,re_lambda,im_lambda\n" << std::setprecision(16);
      for (double e2 = 0.02; e2 <= 0.2001; e2 += 0.02) {
        KpModes mm = explicit_modes(e2, 0.3, g);
        csv << e2 << "," << mm.lambda_kp.real() << "," << mm.lambda_kp.imag() << "\n";
      }
      result["csv"] = ctx.csv_dir + "/kp_eigencurve.csv";
    }
  } else if (id == "kp2/resolvent") {
    Grid1D g(80.0, 1024);
    std::vector<Complex> lams;
    for (int i = -5; i <= 5; ++i) lams.emplace_back(0.0, i);
    KpResolventReport rep = kp_resolvent_bound(lams, 0.1, 0.3, g);
    result = {{"sup_norm", rep.sup_norm},
              {"worst_lambda", {rep.worst_lambda.real(), rep.worst_lambda.imag()}}};
    pass = std::isfinite(rep.sup_norm);
  } else if (id == "kp2/bridge") {
    Grid1D g(25.0 / p.epsilon, std::max<std::size_t>(c.N, 512));
    StripGrid sg(g, c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    double r = kp_approx_residual(p, prof, sg);
    KpBridgeResult band_probe = kp_approx_residual_at(p, prof, sg, p.A);
    double bound = 100.0 / std::pow(p.K, 3);
    result = {{"residual_over_eps3", r},
              {"band_corner_residual_over_eps3", band_probe.residual_over_eps3},
              {"bound", bound}};
    pass = r <= bound;
  } else if (id == "energy/es-dissipation") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    StripGrid sg(g, c.M);
    SolitonProfile prof = build_profile(p.epsilon, g);
    double a = p.a();
    double eta = 1.5 * a;
    BlockOperator L = assemble_La(eta, p, prof, sg);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> nd;
    Vec u(2 * g.N);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(nd(rng), nd(rng));
    Vec us = band_project(EnergyBand::s, u, eta, p, g);
    EnergyResult er = energy_functionals(us, EnergyBand::s, p, prof, sg, eta, &L);
    double floor = -p.delta * p.delta * a / 8.0;
    result = {{"value", er.value},
              {"dissipation", er.dissipation},
              {"ratio", er.dissipation / er.value},
              {"required", floor}};
    pass = er.dissipation / er.value <= floor;
  } else if (id == "energy/commutator") {
    Grid1D g(std::max(c.X, 25.0 / p.epsilon), c.N);
    SolitonProfile prof = build_profile(p.epsilon, g);
    double a = p.a(), delta = p.delta;
    double eta = 1.0;
    auto Am = [&](double xi) {
      return branch_sqrt(flat_dn_symbol(xi, eta, -a)) * smooth_cutoff(xi, 3.0, 6.0);
    };
    auto Bm = [&](double xi) { return Complex(std::abs(xi) >= delta ? 1.0 : 0.0, 0.0); };
    CommutatorCheck cc = commutator_check(Am, Bm, Bm, prof.w_c, 0.0, g);
    result = {{"measured", cc.measured}, {"bound", cc.bound}};
    pass = cc.bound_finite && cc.measured <= cc.bound;
  } else {
    throw std::invalid_argument("unknown check '" + id + "'");
  }

  Json report;
  report["check_id"] = id;
  report["params"] = params_json(p);
  report["result"] = result;
  report["pass"] = pass;
  report["citations"] = citations_for(id);
  report["config"] = ctx.cfg.snapshot;
  return report;
}

std::string slug(const std::string& id) {
  std::string s = id;
  for (char& ch : s)
    if (ch == '/') ch = '_';
  return s;
}

int cmd_run(const std::string& config_path) {
  Config cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (const char* env = std::getenv("WWSTAB_WORKERS")) cfg.workers = std::max(1, std::atoi(env));
  fs::create_directories(cfg.output_dir);
  if (cfg.checks.empty()) {
    std::cout << "no checks requested; 0 run\n";
    return 0;
  }
  std::mutex io_mutex;
  std::atomic<bool> all_pass{true};
  std::atomic<bool> internal_error{false};
  std::atomic<bool> bad_check{false};
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cfg.checks.size()) return;
      const std::string& id = cfg.checks[i];
      try {
        CheckContext ctx{cfg, "", cfg.output_dir};
        ctx.cfg.seed = cfg.seed ^ std::hash<std::string>{}(id);  // per-check deterministic seed
        Json rep = run_one_check(id, ctx);
        if (!rep["pass"].get<bool>()) all_pass = false;
        std::lock_guard<std::mutex> lock(io_mutex);
        std::ofstream out(cfg.output_dir + "/" + slug(id) + ".json");
        out << rep.dump(2) << "\n";
        std::cout << (rep["pass"].get<bool>() ? "[pass] " : "[FAIL] ") << id << "\n";
      } catch (const std::invalid_argument& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "invalid check " << id << ": " << e.what() << "\n";
        bad_check = true;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "error in " << id << ": " << e.what() << "\n";
        internal_error = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < cfg.workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (bad_check) return 2;
  if (internal_error) return 3;
  return all_pass ? 0 : 1;
}

int cmd_summarize(const std::string& dir) {
  bool all = true;
  std::size_t count = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    Json j;
    in >> j;
    if (!j.contains("pass")) continue;
    ++count;
    bool ok = j["pass"].get<bool>();
    all = all && ok;
    std::cout << (ok ? "[pass] " : "[FAIL] ") << j.value("check_id", path.string()) << "\n";
  }
  std::cout << count << " reports\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"water-wave line-soliton transverse-stability laboratory"};
  app.require_subcommand(1);

  std::string config_path, check_name, band, dump_path, csv_dir;
  double epsilon = 0.05, a_hat = 0.4, eta_hat0 = 0.2, eta_arg = 0.1;
  std::string grid_override;
  bool as_csv = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--epsilon", epsilon, "amplitude parameter");
    sub->add_option("--a-hat", a_hat, "weight rate / epsilon");
    sub->add_option("--grid", grid_override, "grid override N=..,X=..,M=..");
    sub->add_flag("--csv", as_csv, "write CSV side files to the output dir");
    sub->add_option("--out", csv_dir, "output directory for side files");
  };

  CLI::App* run = app.add_subcommand("run", "run all checks from a config file");
  run->add_option("config", config_path, "configuration file")->required();

  CLI::App* symbols = app.add_subcommand("symbols", "pointwise symbol checks");
  CLI::App* sym_verify = symbols->add_subcommand("verify", "run one inequality sweep");
  sym_verify->add_option("--check", check_name, "check identifier")->required();
  add_common(sym_verify);

  CLI::App* dn = app.add_subcommand("dn", "Dirichlet-Neumann solver checks");
  CLI::App* dn_check = dn->add_subcommand("check", "flat equivalence and symbol error");
  dn_check->add_option("--dump", dump_path, "dump the operator matrix to a binary container");
  add_common(dn_check);

  CLI::App* modes = app.add_subcommand("modes", "resonant-mode tracing");
  CLI::App* modes_trace = modes->add_subcommand("trace", "trace the eigenvalue curve and fit");
  modes_trace->add_option("--eta-hat0", eta_hat0, "scaled band half-width");
  add_common(modes_trace);

  CLI::App* projection = app.add_subcommand("projection", "spectral projector checks");
  CLI::App* proj_build = projection->add_subcommand("build", "build and verify projectors");
  add_common(proj_build);

  CLI::App* resolvent = app.add_subcommand("resolvent", "resolvent-norm sweeps");
  CLI::App* resolvent_cmd = resolvent->add_subcommand("sweep", "sweep one frequency band");
  resolvent_cmd->add_option("--band", band, "UH | I | L_low")->required();
  add_common(resolvent_cmd);

  CLI::App* semigroup = app.add_subcommand("semigroup", "semigroup decay runs");
  CLI::App* semigroup_cmd = semigroup->add_subcommand("run", "decay trace of projected data");
  add_common(semigroup_cmd);

  CLI::App* kp2 = app.add_subcommand("kp2", "KP-II comparison operator");
  CLI::App* kp_modes_cmd = kp2->add_subcommand("modes", "explicit resonant modes");
  kp_modes_cmd->add_option("--eta", eta_arg, "transverse frequency");
  kp_modes_cmd->add_option("--a-hat", a_hat, "weight rate");
  CLI::App* kp_resolvent_cmd = kp2->add_subcommand("resolvent", "projected resolvent sweep");
  add_common(kp_resolvent_cmd);
  CLI::App* kp_bridge_cmd = kp2->add_subcommand("bridge", "low-frequency reduction remainder");
  add_common(kp_bridge_cmd);

  CLI::App* report = app.add_subcommand("report", "report utilities");
  CLI::App* report_sum = report->add_subcommand("summarize", "summarize a report directory");
  std::string report_dir;
  report_sum->add_option("dir", report_dir, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (report_sum->parsed()) return cmd_summarize(report_dir);

    Config cfg;
    cfg.params = Params::make(epsilon, a_hat);
    cfg.params.eta_hat0 = eta_hat0;
    if (!grid_override.empty()) {
      std::stringstream ss(grid_override);
      std::string kv;
      while (std::getline(ss, kv, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad --grid override");
        std::string key = kv.substr(0, eq);
        double val = std::stod(kv.substr(eq + 1));
        if (key == "N")
          cfg.N = static_cast<std::size_t>(val);
        else if (key == "X")
          cfg.X = val;
        else if (key == "M")
          cfg.M = static_cast<std::size_t>(val);
        else
          throw std::invalid_argument("bad --grid key " + key);
      }
    }
    cfg.snapshot = Json{{"cli", true}};
    CheckContext ctx{cfg, dump_path, csv_dir};
    if (!csv_dir.empty()) fs::create_directories(csv_dir);
    if (!as_csv) ctx.csv_dir.clear();

    std::string id;
    if (sym_verify->parsed())
      id = "symbols/" + check_name;
    else if (dn_check->parsed())
      id = "dn/modified-error";
    else if (modes_trace->parsed())
      id = "modes/trace";
    else if (proj_build->parsed())
      id = "projection/algebra";
    else if (resolvent_cmd->parsed())
      id = "resolvent/" + band;
    else if (semigroup_cmd->parsed())
      id = "semigroup/decay";
    else if (kp_modes_cmd->parsed()) {
      Grid1D g(80.0, 1024);
      KpModes m = explicit_modes(eta_arg, a_hat, g);
      Json out = {{"eta", eta_arg},
                  {"a_hat", a_hat},
                  {"lambda_kp", {m.lambda_kp.real(), m.lambda_kp.imag()}},
                  {"re_negative", m.lambda_kp.real() < 0.0}};
      std::cout << out.dump(2) << "\n";
      return m.lambda_kp.real() < 0.0 ? 0 : 1;
    } else if (kp_resolvent_cmd->parsed())
      id = "kp2/resolvent";
    else if (kp_bridge_cmd->parsed())
      id = "kp2/bridge";
    else
      return 2;

    Json rep = run_one_check(id, ctx);
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
