// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "warpcore/fock.hpp"
#include "warpcore/models.hpp"
#include "warpcore/modular.hpp"
#include "warpcore/rieffel.hpp"
#include "warpcore/warp.hpp"

using namespace warpcore;

namespace {

bool all_ok = true;

void report(const char* name, bool ok, double seconds) {
  std::printf("[%s] %-28s (%.1f s)\n", ok ? "PASS" : "FAIL", name, seconds);
  all_ok = all_ok && ok;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

minkowski::SkewMatrix make_q(int n, double zeta, double eta) {
  const auto form = minkowski::BilinearForm::lorentz(n);
  if (n == 4) return minkowski::standard_q(form, zeta, eta);
  return minkowski::standard_q(form, zeta);
}

// 1. Identity suite on 100 seeded product systems, n in {2,4}, dim <= 12.
bool identity_suite() {
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 4},
                                                {2, 6}, {3, 3}, {2, 5}};
  const double start = now_seconds();
  double worst_tight = 0.0, worst_loose = 0.0;  // 1e-12 / 1e-10 families
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 4;
    const auto [d1, d2] = shapes[trial % shapes.size()];
    std::mt19937_64 rng(1000 + trial);
    std::uniform_real_distribution<double> unif(0.0, 2.0);
    const double zeta = unif(rng), eta = std::max(unif(rng), 1e-3);
    const auto ps = models::ProductSystem::build(n, d1, d2, 2000 + trial);
    const auto& sys = ps.sys;
    const auto q = make_q(n, zeta, eta);
    const auto q2 = make_q(n, 0.5 * zeta + 0.1, 0.4 * eta + 0.1);
    const int d = d1 * d2;
    const auto unit = [](Matrix m) { return Matrix(m / op_norm(m)); };
    const Matrix a = unit(models::random_operator(d, 3000 + trial));
    const Matrix b = unit(models::random_operator(d, 4000 + trial));
    const Matrix c = unit(models::random_operator(d, 5000 + trial));

    worst_tight = std::max(worst_tight, warp::check_star(sys, a, q));
    worst_loose = std::max(worst_loose, warp::check_homomorphism(sys, a, b, q));
    worst_loose =
        std::max(worst_loose, rieffel::check_associativity(sys, a, b, c, q));
    worst_tight = std::max(worst_tight, warp::check_group_law(sys, a, q, q2));
    const Matrix back =
        warp::warp_exact(sys, warp::warp_exact(sys, a, q),
                         minkowski::SkewMatrix{-q.q, q.form});
    worst_tight = std::max(worst_tight, op_norm(back - a));
    const auto vac = warp::check_vacuum(sys, a, b, q);
    worst_tight = std::max(worst_tight, vac.invariance_residual);
    worst_tight = std::max(worst_tight, vac.product_residual);

    // covariance: a represented translation (M = 1) and the antiunitary
    // eigenbasis conjugation (M = -1)
    Vector x = Vector::Zero(n);
    for (int mu = 0; mu < n; ++mu) x(mu) = 0.3 * (mu + 1);
    worst_loose = std::max(
        worst_loose,
        warp::check_covariance(sys, a, q, {sys.translate(x), false},
                               RealMatrix::Identity(n, n)));
    worst_loose = std::max(
        worst_loose,
        warp::check_covariance(sys, a, q,
                               {Matrix::Identity(d, d), true},
                               RealMatrix(-RealMatrix::Identity(n, n))));

    // commutation implication on the tensor legs
    const Matrix la = ps.leg1(unit(models::random_operator(d1, 6000 + trial)));
    const Matrix lb = ps.leg2(unit(models::random_operator(d2, 7000 + trial)));
    const auto cc = warp::check_commutation(sys, la, lb, q);
    if (cc.hypothesis_residual <= 1e-12 && cc.conclusion_residual > 1e-10)
      return false;
    if (cc.hypothesis_residual > 1e-12) return false;  // legs must commute
  }
  const double elapsed = now_seconds() - start;
  return worst_tight <= 1e-12 && worst_loose <= 1e-10 && elapsed < 60.0;
}

// 2. Quadrature oracle agreement on the regression systems.
bool oracle_agreement() {
  const double start = now_seconds();
  const auto systems = models::regression_systems();
  const auto form = minkowski::BilinearForm::lorentz(2);
  rieffel::MollifierSpec gauss;
  rieffel::MollifierSpec prod;
  prod.family = rieffel::MollifierSpec::Family::ProductGaussian;
  int idx = 0;
  for (const auto& sys : systems) {
    const int d = sys.dim();
    const Matrix a = models::random_operator(d, 8000 + idx);
    const Matrix b = models::random_operator(d, 8100 + idx);
    const auto q = minkowski::standard_q(form, 0.9 + 0.1 * idx);
    ++idx;

    const Matrix exact = rieffel::product_exact(sys, a, b, q);
    const double scale = std::max(1.0, op_norm(exact));
    const auto qg = rieffel::product_quadrature(sys, a, b, q, gauss);
    const auto qp = rieffel::product_quadrature(sys, a, b, q, prod);
    if (!qg.converged || !qp.converged) return false;
    if (op_norm(qg.value - exact) / scale > 1e-6) return false;
    if (op_norm(qp.value - exact) / scale > 1e-6) return false;
    if (op_norm(qg.value - qp.value) / scale > 1e-6) return false;

    const Matrix wexact = warp::warp_exact(sys, a, q);
    const auto wl = warp::warp_quadrature(sys, a, q, gauss, {},
                                          warp::Ordering::Left);
    const auto wr = warp::warp_quadrature(sys, a, q, gauss, {},
                                          warp::Ordering::Right);
    const double wscale = std::max(1.0, op_norm(wexact));
    if (op_norm(wl.value - wexact) / wscale > 1e-6) return false;
    if (op_norm(wr.value - wexact) / wscale > 1e-6) return false;
    if (op_norm(wl.value - wr.value) / wscale >
        wl.error_estimate + wr.error_estimate + 1e-6)
      return false;
  }
  return now_seconds() - start < 300.0;
}

// 3. Modular invariance + commutant duality on >= 20 tensor triples, d <= 6.
bool modular_suite() {
  struct Triple {
    int d;
    double beta;
  };
  std::vector<Triple> triples;
  for (int k = 0; k < 8; ++k) triples.push_back({2, 0.2 * k});
  for (int k = 0; k < 7; ++k) triples.push_back({3, 0.15 * k + 0.1});
  for (int k = 0; k < 3; ++k) triples.push_back({4, 0.4 * k});
  triples.push_back({5, 0.6});
  triples.push_back({6, 0.8});
  const auto form = minkowski::BilinearForm::lorentz(2);
  int seed = 9000;
  for (const auto& t : triples) {
    const auto tm = models::TensorModel::build(t.d, t.beta, ++seed);
    const auto q = minkowski::standard_q(form, 0.7 + 0.05 * (seed % 7));
    const auto inv =
        modular::check_modular_invariance(tm.sys, tm.algebra, tm.omega, q);
    if (!inv.applicable) return false;
    if (inv.delta_residual > 1e-8 || inv.j_residual > 1e-8) return false;
    const auto dual =
        modular::check_commutant_duality(tm.sys, tm.algebra, tm.omega, q);
    if (!dual.applicable || dual.residual > 1e-8) return false;
  }
  return true;
}

// 4. Wedge geometry: admissibility, jQj = Q, span of deformation directions.
bool geometry_suite() {
  for (int n : {2, 3, 4}) {
    const auto q = make_q(n, 1.0, 0.5);
    const auto rep = minkowski::check_admissible(q, 1000, 17);
    if (!rep.cone_into_wedge ||
        rep.cone_mode != minkowski::CheckMode::Analytic)
      return false;
    if (!rep.invariant_under_stabilizer || rep.stabilizer_residual > 1e-12)
      return false;
    if (n >= 3 && (!rep.flipped_by_wedge_flip || rep.flip_residual > 1e-12))
      return false;
    const RealMatrix j = minkowski::reflection_j(n).lorentz;
    if ((j * q.q * j.transpose() - q.q).norm() != 0.0) return false;
  }
  for (int n : {3, 4}) {
    const auto q = make_q(n, 1.0, 0.5);
    const auto span = minkowski::span_deformation_directions(q, 0.3, 200, 19);
    if (!span.q_in_span()) return false;
  }
  return true;
}

// 5. Fock exchange phases at m = 1, six rapidities in [-1.5, 1.5], cutoff 2.
bool fock_suite() {
  const double start = now_seconds();
  std::vector<double> thetas;
  for (int i = 0; i < 6; ++i) thetas.push_back(-1.5 + 3.0 * i / 5.0);
  const auto form = minkowski::BilinearForm::lorentz(2);
  fock::FockModel model(1.0, thetas, 2);
  for (double zeta : {0.6, 1.0, 1.4}) {
    const auto q = minkowski::standard_q(form, zeta);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        const Complex phase = fock::exchange_phase(model, i, j, q);
        if (std::abs(std::abs(phase) - 1.0) > 1e-12) return false;
        const Complex swapped = fock::exchange_phase(model, j, i, q);
        if (std::abs(swapped - std::conj(phase)) > 1e-12) return false;
        const Complex predicted =
            std::exp(2.0 * I * zeta * std::sinh(thetas[j] - thetas[i]));
        if (std::abs(phase - predicted) > 1e-10) return false;
      }
    // boost invariance: equal rapidity differences give equal phases
    for (int shift = 1; shift <= 2; ++shift) {
      const Complex p1 = fock::exchange_phase(model, 0, 2, q);
      const Complex p2 = fock::exchange_phase(model, shift, 2 + shift, q);
      if (std::abs(p1 - p2) > 1e-10) return false;
    }
  }
  // hand value: theta pair (0, 1) at zeta = m = 1
  fock::FockModel pair(1.0, {0.0, 1.0}, 2);
  const Complex hand =
      fock::exchange_phase(pair, 0, 1, minkowski::standard_q(form, 1.0));
  if (std::abs(hand - std::exp(2.0 * I * std::sinh(1.0))) > 1e-10) return false;
  // Q = 0 reduces to 1 exactly
  if (fock::exchange_phase(model, 0, 1, minkowski::standard_q(form, 0.0)) !=
      Complex(1.0))
    return false;
  return now_seconds() - start < 30.0;
}

// 6. Tomita machinery self-checks, tracial and thermal.
bool tomita_suite() {
  for (double beta : {0.0, 0.9, 1.6}) {
    const auto tm = models::TensorModel::build(3, beta, 77 + int(10 * beta));
    const auto bicomm = modular::commutant(modular::commutant(tm.algebra));
    if (modular::span::equality_residual(bicomm.basis, tm.algebra.basis) >
        1e-10)
      return false;
    const auto md = modular::tomita(tm.algebra, tm.omega);
    const auto sc = md.self_check(tm.algebra, tm.omega);
    if (sc.polar_residual > 1e-10 || sc.j_involution > 1e-10 ||
        sc.j_delta_j > 1e-10 || sc.s_action > 1e-10 ||
        sc.s_involution > 1e-10 || sc.flow_invariance > 1e-10 ||
        sc.j_commutant > 1e-10)
      return false;
    if (beta == 0.0 &&
        op_norm(md.delta - Matrix::Identity(9, 9)) > 1e-10)
      return false;
    if (beta > 0.0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(md.delta);
      std::vector<double> expected;
      for (double ek : tm.energies)
        for (double el : tm.energies)
          expected.push_back(std::exp(-beta * (ek - el)));
      std::sort(expected.begin(), expected.end());
      for (int i = 0; i < 9; ++i)
        if (std::abs(es.eigenvalues()(i) - expected[i]) >
            1e-10 * std::max(1.0, expected[i]))
          return false;
    }
  }
  return true;
}

// 7. Q = 0 degeneracy across every suite.
bool degeneracy_suite() {
  const auto form2 = minkowski::BilinearForm::lorentz(2);
  const auto q0 = minkowski::standard_q(form2, 0.0);
  for (const auto& sys : models::regression_systems()) {
    const int d = sys.dim();
    const Matrix a = models::random_operator(d, 501);
    const Matrix b = models::random_operator(d, 502);
    if (op_norm(warp::warp_exact(sys, a, q0) - a) > 1e-12) return false;
    if (op_norm(rieffel::product_exact(sys, a, b, q0) - a * b) > 1e-12)
      return false;
  }
  const auto ps = models::ProductSystem::build(4, 2, 3, 91);
  const auto q04 = make_q(4, 0.0, 0.0);
  const Matrix a = models::random_operator(6, 503);
  if (op_norm(warp::warp_exact(ps.sys, a, q04) - a) > 1e-12) return false;

  const auto tm = models::TensorModel::build(3, 0.7, 92);
  const auto warped = modular::warp_algebra(tm.sys, tm.algebra, q0);
  if (modular::span::equality_residual(warped.basis, tm.algebra.basis) > 1e-12)
    return false;
  const auto inv =
      modular::check_modular_invariance(tm.sys, tm.algebra, tm.omega, q0);
  if (!inv.applicable || inv.delta_residual > 1e-12 || inv.j_residual > 1e-12)
    return false;

  fock::FockModel model(1.0, {0.0, 0.8}, 2);
  if (fock::exchange_phase(model, 0, 1, q0) != Complex(1.0)) return false;
  return true;
}

template <typename F>
void run(const char* name, F&& f) {
  const double t = now_seconds();
  bool ok = false;
  try {
    ok = f();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
  }
  report(name, ok, now_seconds() - t);
}

}  // namespace

int main() {
  run("identity suite", identity_suite);
  run("quadrature oracle", oracle_agreement);
  run("modular invariance/duality", modular_suite);
  run("wedge geometry", geometry_suite);
  run("fock exchange phases", fock_suite);
  run("tomita self-checks", tomita_suite);
  run("q = 0 degeneracy", degeneracy_suite);
  return all_ok ? 0 : 1;
}
