#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcore/models.hpp"
#include "warpcore/modular.hpp"

using namespace warpcore;
using modular::AlgebraSpec;
using modular::commutant;

namespace {

minkowski::SkewMatrix q2d(double zeta) {
  return minkowski::standard_q(minkowski::BilinearForm::lorentz(2), zeta);
}

}  // namespace

TEST_CASE("commutant of the full matrix algebra is the scalars and back") {
  AlgebraSpec full = AlgebraSpec::generate(
      {models::random_operator(3, 1), models::random_operator(3, 2)});
  CHECK(full.dim() == 9);
  const AlgebraSpec scalars = commutant(full);
  CHECK(scalars.dim() == 1);
  CHECK(op_norm(scalars.basis[0] * scalars.basis[0].adjoint() -
                scalars.basis[0].adjoint() * scalars.basis[0]) <= 1e-12);
  CHECK(commutant(scalars).dim() == 9);
}

TEST_CASE("commutant of M_d (x) 1 is 1 (x) M_d") {
  const auto tm = models::TensorModel::build(3, 0.7, 5);
  CHECK(tm.algebra.dim() == 9);
  const AlgebraSpec comm = commutant(tm.algebra);
  CHECK(comm.dim() == 9);
  // every commutant element has the form 1 (x) b: partial trace over the
  // second leg of E_{01} (x) 1 against any commutant element vanishes
  Matrix e01 = Matrix::Zero(3, 3);
  e01(0, 1) = 1.0;
  Matrix big = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    big.block(0, 3, 3, 3) = Matrix::Identity(3, 3);  // e01 (x) 1 layout
  // simpler: commutation with the generators is the defining property
  for (const auto& x : comm.basis)
    for (const auto& g : tm.algebra.generators)
      CHECK(op_norm(x * g - g * x) <= 1e-10);
}

TEST_CASE("bicommutant idempotence") {
  const auto tm = models::TensorModel::build(2, 1.0, 6);
  const AlgebraSpec bicomm = commutant(commutant(tm.algebra));
  CHECK(modular::span::equality_residual(bicomm.basis, tm.algebra.basis) <=
        1e-10);
}

TEST_CASE("closure residual of a generated algebra vanishes") {
  const auto tm = models::TensorModel::build(2, 0.5, 7);
  CHECK(tm.algebra.closure_residual() <= 1e-10);
}

TEST_CASE("cyclic and separating verdicts") {
  const auto tm = models::TensorModel::build(3, 0.8, 8);
  const auto cs = modular::cyclic_separating(tm.algebra, tm.omega);
  CHECK(cs.cyclic);
  CHECK(cs.separating);

  // full algebra: cyclic but not separating for d >= 2
  AlgebraSpec full = AlgebraSpec::generate(
      {models::random_operator(2, 11), models::random_operator(2, 12)});
  CVector v = CVector::Unit(2, 0);
  const auto cs2 = modular::cyclic_separating(full, v);
  CHECK(cs2.cyclic);
  CHECK_FALSE(cs2.separating);

  // scalars: not cyclic for d >= 2
  AlgebraSpec scalars;
  scalars.d = 2;
  scalars.basis = {Matrix::Identity(2, 2) / std::sqrt(2.0)};
  scalars.generators = scalars.basis;
  const auto cs3 = modular::cyclic_separating(scalars, v);
  CHECK_FALSE(cs3.cyclic);
}

TEST_CASE("tracial vector gives Delta = 1 and J = flip conjugation") {
  const auto tm = models::TensorModel::build(3, 0.0, 9);  // beta = 0: tracial
  const auto md = modular::tomita(tm.algebra, tm.omega);
  CHECK(op_norm(md.delta - Matrix::Identity(9, 9)) <= 1e-10);
  // J (a (x) 1) J = 1 (x) conj(a) for the maximally entangled vector;
  // check on the generators
  for (const auto& g : tm.algebra.generators) {
    const Matrix jgj = md.conj_by_j(g);
    for (const auto& x : tm.algebra.basis)
      CHECK(op_norm(jgj * x - x * jgj) <= 1e-10);
  }
}

TEST_CASE("thermal vector gives Delta eigenvalues exp(-beta(e_k - e_l))") {
  const double beta = 1.3;
  const auto tm = models::TensorModel::build(3, beta, 10);
  const auto md = modular::tomita(tm.algebra, tm.omega);
  Eigen::SelfAdjointEigenSolver<Matrix> es(md.delta);
  std::vector<double> expected;
  for (double ek : tm.energies)
    for (double el : tm.energies) expected.push_back(std::exp(-beta * (ek - el)));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 9; ++i)
    CHECK(std::abs(es.eigenvalues()(i) - expected[i]) <=
          1e-10 * std::max(1.0, expected[i]));
}

TEST_CASE("Tomita self-check identities") {
  const auto tm = models::TensorModel::build(3, 0.9, 11);
  const auto md = modular::tomita(tm.algebra, tm.omega);
  const auto sc = md.self_check(tm.algebra, tm.omega);
  CHECK(sc.polar_residual <= 1e-10);
  CHECK(sc.j_involution <= 1e-10);
  CHECK(sc.j_delta_j <= 1e-10);
  CHECK(sc.s_action <= 1e-10);
  CHECK(sc.s_involution <= 1e-10);
  CHECK(sc.flow_invariance <= 1e-10);
  CHECK(sc.j_commutant <= 1e-10);
}

TEST_CASE("tomita rejects a non-separating vector") {
  AlgebraSpec full = AlgebraSpec::generate(
      {models::random_operator(2, 21), models::random_operator(2, 22)});
  CHECK_THROWS_AS(modular::tomita(full, CVector::Unit(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("warped algebra at Q = 0 has the same span") {
  const auto tm = models::TensorModel::build(2, 0.6, 23);
  const auto warped = modular::warp_algebra(tm.sys, tm.algebra, q2d(0.0));
  CHECK(modular::span::equality_residual(warped.basis, tm.algebra.basis) <=
        1e-12);
}

TEST_CASE("diagonal algebras are unchanged by warping") {
  // diagonal operators pick up phases e^{i x_k Q x_k} = 1
  const auto tm = models::TensorModel::build(3, 0.6, 24);
  Matrix diag = Matrix::Zero(9, 9);
  for (int k = 0; k < 9; ++k) diag(k, k) = Complex(0.3 * k, 0.0);
  AlgebraSpec spec = AlgebraSpec::generate({diag});
  const auto warped = modular::warp_algebra(tm.sys, spec, q2d(1.5));
  CHECK(modular::span::equality_residual(warped.basis, spec.basis) <= 1e-12);
}

TEST_CASE("modular invariance of the warped algebra on a tensor model") {
  const auto tm = models::TensorModel::build(3, 1.1, 25);
  const auto rep =
      modular::check_modular_invariance(tm.sys, tm.algebra, tm.omega, q2d(1.0));
  REQUIRE(rep.applicable);
  CHECK(rep.delta_residual <= 1e-8);
  CHECK(rep.j_residual <= 1e-8);
}

TEST_CASE("commutant duality for the warped algebra") {
  const auto tm = models::TensorModel::build(3, 0.8, 26);
  const auto rep =
      modular::check_commutant_duality(tm.sys, tm.algebra, tm.omega, q2d(1.3));
  REQUIRE(rep.applicable);
  CHECK(rep.residual <= 1e-8);
}

TEST_CASE("borchers report on a tensor model") {
  const auto tm = models::TensorModel::build(2, 0.7, 27);
  const auto rep =
      modular::borchers_report(tm.sys, tm.algebra, tm.omega,
                               minkowski::Wedge::reference(2));
  // difference spectrum is symmetric around zero, so never inside V+
  CHECK_FALSE(rep.spectrum_in_cone);
  CHECK(rep.omega_invariance <= 1e-10);
  CHECK(rep.cyclic);
  CHECK(rep.separating);
  // alpha preserves the legs, so the half-sided inclusion degenerates
  CHECK(rep.half_sided_residual <= 1e-10);
  CHECK(rep.inclusion_is_equality);
}

TEST_CASE("maximal causality through the modular flip") {
  const auto tm = models::TensorModel::build(2, 0.9, 28);
  const auto md = modular::tomita(tm.algebra, tm.omega);
  modular::RepresentedElement flip{minkowski::reflection_j(2), md.j_lin, true};
  const auto rep =
      modular::check_maximal_causality(tm.sys, tm.algebra, flip, q2d(0.8));
  CHECK(rep.undeformed_residual <= 1e-8);
  CHECK(rep.deformed_residual <= 1e-8);
}

TEST_CASE("wedge net audit over translations") {
  const auto tm = models::TensorModel::build(2, 0.5, 29);
  Vector x(2);
  x << 0.2, 1.0;  // inside the reference wedge
  std::vector<modular::RepresentedElement> els;
  els.push_back({minkowski::PoincareElement::identity(2),
                 Matrix::Identity(4, 4), false});
  els.push_back({minkowski::PoincareElement::translationOf(x),
                 tm.sys.translate(x), false});
  const auto audit = modular::wedge_net(tm.sys, tm.algebra, els);
  CHECK(audit.worst_isotony <= 1e-10);
  bool saw_inclusion = false;
  for (const auto& p : audit.pairs)
    saw_inclusion = saw_inclusion || p.geometric_inclusion;
  CHECK(saw_inclusion);
}

TEST_CASE("equivalence finder: identity and rotated copies") {
  const auto tm = models::TensorModel::build(2, 0.8, 30);
  const auto self = modular::check_equivalence(tm.sys, tm.algebra, tm.omega,
                                               tm.sys, tm.algebra, tm.omega);
  CHECK(self.found);

  // unitarily rotated copy
  const Matrix u = models::random_unitary(4, 31);
  std::vector<Matrix> gens;
  for (const auto& p : tm.sys.generators()) gens.push_back(u * p * u.adjoint());
  const CVector omega2 = u * tm.omega;
  const auto sys2 = covariant::CovariantSystem::build(
      gens, minkowski::BilinearForm::lorentz(2), omega2);
  std::vector<Matrix> agens;
  for (const auto& g : tm.algebra.generators)
    agens.push_back(u * g * u.adjoint());
  const auto spec2 = AlgebraSpec::generate(agens);
  const auto rot = modular::check_equivalence(tm.sys, tm.algebra, tm.omega,
                                              sys2, spec2, omega2);
  CHECK(rot.found);
}

TEST_CASE("degenerate Q = 0 invariance reports vanish identically") {
  const auto tm = models::TensorModel::build(2, 0.4, 33);
  const auto rep =
      modular::check_modular_invariance(tm.sys, tm.algebra, tm.omega, q2d(0.0));
  REQUIRE(rep.applicable);
  CHECK(rep.delta_residual <= 1e-12);
  CHECK(rep.j_residual <= 1e-12);
}
