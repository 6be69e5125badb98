// warpcore: command-line harness over the deformation library.
//
// Subcommands: verify, deform, wedge, fock, quadrature.  Exit codes:
// 0 all checks pass, 1 a numerical check failed, 2 usage or input error.
// JSON reports use [re, im] pairs for complex numbers; tables are CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "warpcore/fock.hpp"
#include "warpcore/models.hpp"
#include "warpcore/modular.hpp"
#include "warpcore/rieffel.hpp"
#include "warpcore/serialize.hpp"
#include "warpcore/warp.hpp"

using namespace warpcore;
using nlohmann::json;

namespace {

void apply_thread_cap() {
  if (const char* env = std::getenv("WARPCORE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

void emit(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream os(out);
    os << report.dump(2) << '\n';
  }
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    os << text;
  }
}

minkowski::SkewMatrix make_q(int n, double zeta, double eta) {
  const auto form = minkowski::BilinearForm::lorentz(n);
  if (n == 4) return minkowski::standard_q(form, zeta, eta);
  return minkowski::standard_q(form, zeta);
}

struct VerifyConfig {
  int n = 2;
  int dim = 6;
  double zeta = 1.0;
  double eta = 0.5;
  std::uint64_t seed = 1;
  int trials = 8;
  double tol_tight = 1e-12;
  double tol_loose = 1e-10;
  double tol_modular = 1e-8;
  std::string only;
  std::string out;
};

bool wanted(const VerifyConfig& cfg, const std::string& name) {
  return cfg.only.empty() || cfg.only == name;
}

int cmd_verify(const VerifyConfig& cfg) {
  if (cfg.n != 2 && cfg.n != 3 && cfg.n != 4) {
    std::cerr << "verify: --n must be 2, 3 or 4\n";
    return 2;
  }
  if (cfg.dim < 2 || cfg.dim > 16 || cfg.trials < 1 || cfg.zeta < 0) {
    std::cerr << "verify: invalid dimensions/trials/zeta\n";
    return 2;
  }
  json report;
  report["config"] = {{"n", cfg.n},     {"dim", cfg.dim},
                      {"zeta", cfg.zeta}, {"eta", cfg.eta},
                      {"seed", cfg.seed}, {"trials", cfg.trials}};
  bool pass = true;
  json families = json::array();

  // identity suite on product systems
  const int d1 = 2, d2 = std::max(2, cfg.dim / 2);
  for (int t = 0; t < cfg.trials; ++t) {
    const auto ps = models::ProductSystem::build(cfg.n == 3 ? 2 : cfg.n, d1,
                                                 d2, cfg.seed + t);
    const auto& sys = ps.sys;
    const int n = sys.spacetime_dim();
    const auto q = make_q(n, cfg.zeta, cfg.eta);
    const auto q2 = make_q(n, 0.5 * cfg.zeta + 0.1, 0.4 * cfg.eta + 0.1);
    const int d = d1 * d2;
    const auto unit = [](Matrix m) { return Matrix(m / op_norm(m)); };
    const Matrix a = unit(models::random_operator(d, cfg.seed + 100 + t));
    const Matrix b = unit(models::random_operator(d, cfg.seed + 200 + t));
    const Matrix c = unit(models::random_operator(d, cfg.seed + 300 + t));

    json fam;
    fam["trial"] = t;
    auto record = [&](const std::string& name, double residual, double tol) {
      if (!wanted(cfg, name)) return;
      const bool ok = residual <= tol;
      fam[name] = {{"residual", residual}, {"tol", tol}, {"pass", ok}};
      pass = pass && ok;
    };
    record("star", warp::check_star(sys, a, q), cfg.tol_tight);
    record("homomorphism", warp::check_homomorphism(sys, a, b, q),
           cfg.tol_loose);
    record("associativity", rieffel::check_associativity(sys, a, b, c, q),
           cfg.tol_loose);
    record("group_law", warp::check_group_law(sys, a, q, q2), cfg.tol_tight);
    const Matrix back =
        warp::warp_exact(sys, warp::warp_exact(sys, a, q),
                         minkowski::SkewMatrix{-q.q, q.form});
    record("inverse", op_norm(back - a), cfg.tol_tight);
    const auto vac = warp::check_vacuum(sys, a, b, q);
    record("vacuum",
           std::max(vac.invariance_residual, vac.product_residual),
           cfg.tol_tight);
    Vector x = Vector::Zero(n);
    for (int mu = 0; mu < n; ++mu) x(mu) = 0.2 * (mu + 1);
    record("covariance",
           warp::check_covariance(sys, a, q, {sys.translate(x), false},
                                  RealMatrix::Identity(n, n)),
           cfg.tol_loose);
    const Matrix la = ps.leg1(unit(models::random_operator(d1, cfg.seed + 400 + t)));
    const Matrix lb = ps.leg2(unit(models::random_operator(d2, cfg.seed + 500 + t)));
    const auto cc = warp::check_commutation(sys, la, lb, q);
    if (wanted(cfg, "commutation")) {
      const bool ok = cc.hypothesis_residual > cfg.tol_tight ||
                      cc.conclusion_residual <= cfg.tol_loose;
      fam["commutation"] = {{"hypothesis", cc.hypothesis_residual},
                            {"conclusion", cc.conclusion_residual},
                            {"pass", ok}};
      pass = pass && ok;
    }
    families.push_back(fam);
  }
  report["identity_families"] = families;

  // modular suite on tensor models
  json modular_runs = json::array();
  const auto q2d = make_q(2, cfg.zeta, 0.0);
  for (int t = 0; t < std::min(cfg.trials, 4); ++t) {
    const int d = 2 + t % 2;
    const auto tm = models::TensorModel::build(d, 0.3 * (t + 1),
                                               cfg.seed + 600 + t);
    json run;
    run["d"] = d;
    if (wanted(cfg, "modular_invariance")) {
      const auto inv =
          modular::check_modular_invariance(tm.sys, tm.algebra, tm.omega, q2d);
      const bool ok = inv.applicable &&
                      inv.delta_residual <= cfg.tol_modular &&
                      inv.j_residual <= cfg.tol_modular;
      run["modular_invariance"] = {{"applicable", inv.applicable},
                                   {"delta_residual", inv.delta_residual},
                                   {"j_residual", inv.j_residual},
                                   {"skip_reason", inv.skip_reason},
                                   {"pass", ok}};
      pass = pass && (ok || !inv.skip_reason.empty());
    }
    if (wanted(cfg, "duality")) {
      const auto dual =
          modular::check_commutant_duality(tm.sys, tm.algebra, tm.omega, q2d);
      const bool ok = dual.applicable && dual.residual <= cfg.tol_modular;
      run["duality"] = {{"applicable", dual.applicable},
                        {"residual", dual.residual},
                        {"skip_reason", dual.skip_reason},
                        {"pass", ok}};
      pass = pass && (ok || !dual.skip_reason.empty());
    }
    modular_runs.push_back(run);
  }
  report["modular_runs"] = modular_runs;
  report["pass"] = pass;
  emit(report, cfg.out);
  return pass ? 0 : 1;
}

int cmd_deform(const std::string& input, const std::string& out, double zeta,
               double eta, bool with_quadrature) {
  json in;
  try {
    std::ifstream is(input);
    if (!is) throw std::runtime_error("cannot open " + input);
    is >> in;
  } catch (const std::exception& e) {
    std::cerr << "deform: " << e.what() << '\n';
    return 2;
  }
  try {
    const auto sys = serialize::system_from_json(in.at("system"));
    const Matrix a = serialize::matrix_from_json(in.at("operator"));
    if (a.rows() != sys.dim() || a.cols() != sys.dim())
      throw std::invalid_argument("operator dimension mismatch");
    const auto q = make_q(sys.spacetime_dim(), zeta, eta);
    const Matrix aq = warp::warp_exact(sys, a, q);
    const Matrix back = warp::warp_exact(
        sys, aq, minkowski::SkewMatrix{-q.q, q.form});
    json report;
    report["deformed"] = serialize::matrix_to_json(aq);
    report["round_trip_residual"] = op_norm(back - a);
    if (with_quadrature) {
      const auto qr = warp::warp_quadrature(sys, a, q, {});
      report["quadrature"] = {
          {"difference", op_norm(qr.value - aq)},
          {"error_estimate", qr.error_estimate},
          {"converged", qr.converged}};
    }
    emit(report, out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "deform: " << e.what() << '\n';
    return 2;
  }
}

int cmd_wedge(int n, double zeta, double eta, const std::string& out) {
  try {
    const auto q = make_q(n, zeta, eta);
    const auto rep = minkowski::check_admissible(q, 1000, 17);
    json report;
    report["n"] = n;
    report["zeta"] = zeta;
    if (n == 4) report["eta"] = eta;
    report["admissibility"] = {
        {"cone_into_wedge", rep.cone_into_wedge},
        {"cone_mode",
         rep.cone_mode == minkowski::CheckMode::Analytic ? "analytic"
                                                         : "sampled"},
        {"invariant_under_stabilizer", rep.invariant_under_stabilizer},
        {"stabilizer_residual", rep.stabilizer_residual},
        {"flipped_by_wedge_flip", rep.flipped_by_wedge_flip},
        {"flip_residual", rep.flip_residual},
        {"cone_margin", rep.cone_margin},
        {"admissible", rep.admissible()}};
    if (n >= 3) {
      const auto span = minkowski::span_deformation_directions(q, 0.3, 200, 19);
      report["span"] = {{"sample_count", span.sample_count},
                        {"span_rank", span.span_rank},
                        {"residual", span.residual},
                        {"q_in_span", span.q_in_span()}};
    }
    emit(report, out);
    return rep.admissible() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "wedge: " << e.what() << '\n';
    return 2;
  }
}

int cmd_fock(double mass, int modes, int cutoff, double zeta,
             const std::string& out_prefix) {
  try {
    std::vector<double> thetas;
    for (int i = 0; i < modes; ++i)
      thetas.push_back(modes == 1 ? 0.0 : -1.5 + 3.0 * i / (modes - 1));
    fock::FockModel model(mass, thetas, cutoff);
    const auto q = make_q(2, zeta, 0.0);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < modes; ++i)
      for (int j = i + 1; j < modes; ++j) pairs.emplace_back(i, j);
    const auto rows = fock::scattering_table(model, q, pairs);
    emit_text(fock::scattering_csv(rows),
              out_prefix.empty() ? "" : out_prefix + "_scattering.csv");

    std::ostringstream wedge_csv;
    wedge_csv.precision(15);
    wedge_csv << "mode1,mode2,hypothesis_residual,conclusion_residual\n";
    for (const auto& [i, j] : pairs) {
      CVector f = CVector::Zero(modes), g = CVector::Zero(modes);
      f(i) = 1.0;
      g(j) = 1.0;
      const auto wc = fock::wedge_commutator_residual(model, f, g, q);
      wedge_csv << i << ',' << j << ',' << wc.hypothesis_residual << ','
                << wc.conclusion_residual << '\n';
    }
    emit_text(wedge_csv.str(),
              out_prefix.empty() ? "" : out_prefix + "_wedge.csv");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "fock: " << e.what() << '\n';
    return 2;
  }
}

int cmd_quadrature(int model_index, double zeta, const std::string& out) {
  const auto systems = models::regression_systems();
  if (model_index < 0 || model_index >= static_cast<int>(systems.size())) {
    std::cerr << "quadrature: --model must be 0.."
              << systems.size() - 1 << '\n';
    return 2;
  }
  const auto& sys = systems[model_index];
  const int d = sys.dim();
  const Matrix a = models::random_operator(d, 42);
  const Matrix b = models::random_operator(d, 43);
  const auto q = make_q(2, zeta, 0.0);
  const Matrix exact = rieffel::product_exact(sys, a, b, q);
  const double scale = std::max(1.0, op_norm(exact));

  std::ostringstream csv;
  csv.precision(15);
  csv << "mollifier,eps,value_norm,increment,final_difference\n";
  bool pass = true;
  for (auto family : {rieffel::MollifierSpec::Family::Gaussian,
                      rieffel::MollifierSpec::Family::ProductGaussian}) {
    rieffel::MollifierSpec moll;
    moll.family = family;
    const char* name =
        family == rieffel::MollifierSpec::Family::Gaussian ? "gaussian"
                                                           : "product";
    const auto result = rieffel::product_quadrature(sys, a, b, q, moll);
    const double diff = op_norm(result.value - exact) / scale;
    for (const auto& row : result.table)
      csv << name << ',' << row.eps << ',' << row.value_norm << ','
          << row.increment << ',' << diff << '\n';
    pass = pass && result.converged && diff <= 1e-6;
  }
  emit_text(csv.str(), out);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"warped convolutions and deformed products, numerically"};
  app.require_subcommand(1);

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "run the identity and modular suites");
  verify->add_option("--n", vc.n, "spacetime dimension (2, 3 or 4)");
  verify->add_option("--dim", vc.dim, "Hilbert space dimension per system");
  verify->add_option("--zeta", vc.zeta, "wedge deformation strength");
  verify->add_option("--eta", vc.eta, "transverse block strength (n = 4)");
  verify->add_option("--seed", vc.seed, "base RNG seed");
  verify->add_option("--trials", vc.trials, "number of seeded systems");
  verify->add_option("--tol", vc.tol_loose, "loose tolerance override");
  verify->add_option("--only", vc.only, "restrict to one named check");
  verify->add_option("--out", vc.out, "report file (default stdout)");

  std::string deform_in, deform_out;
  double dzeta = 1.0, deta = 0.5;
  bool with_quadrature = false;
  auto* deform = app.add_subcommand("deform", "warp an operator from a JSON system");
  deform->add_option("input", deform_in, "input JSON {system, operator}")
      ->required();
  deform->add_option("--out", deform_out, "output JSON (default stdout)");
  deform->add_option("--zeta", dzeta, "wedge deformation strength");
  deform->add_option("--eta", deta, "transverse block strength (n = 4)");
  deform->add_flag("--quadrature", with_quadrature, "add quadrature cross-check");

  int wn = 2;
  double wzeta = 1.0, weta = 0.5;
  std::string wedge_out;
  auto* wedge = app.add_subcommand("wedge", "admissibility and span reports");
  wedge->add_option("--n", wn, "spacetime dimension");
  wedge->add_option("--zeta", wzeta, "wedge deformation strength");
  wedge->add_option("--eta", weta, "transverse block strength (n = 4)");
  wedge->add_option("--out", wedge_out, "report file (default stdout)");

  double fmass = 1.0, fzeta = 1.0;
  int fmodes = 6, fcutoff = 2;
  std::string fock_out;
  auto* fockc = app.add_subcommand("fock", "scattering and wedge-residual tables");
  fockc->add_option("--mass", fmass, "particle mass");
  fockc->add_option("--modes", fmodes, "number of rapidity modes");
  fockc->add_option("--cutoff", fcutoff, "particle-number cutoff");
  fockc->add_option("--zeta", fzeta, "wedge deformation strength");
  fockc->add_option("--out", fock_out, "output file prefix (default stdout)");

  int qmodel = 0;
  double qzeta = 1.0;
  std::string quad_out;
  auto* quad = app.add_subcommand("quadrature", "convergence table vs exact path");
  quad->add_option("--model", qmodel, "regression system index");
  quad->add_option("--zeta", qzeta, "wedge deformation strength");
  quad->add_option("--out", quad_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) return cmd_verify(vc);
  if (deform->parsed())
    return cmd_deform(deform_in, deform_out, dzeta, deta, with_quadrature);
  if (wedge->parsed()) return cmd_wedge(wn, wzeta, weta, wedge_out);
  if (fockc->parsed()) return cmd_fock(fmass, fmodes, fcutoff, fzeta, fock_out);
  if (quad->parsed()) return cmd_quadrature(qmodel, qzeta, quad_out);
  return 2;
}
