#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "warpcore/models.hpp"
#include "warpcore/rieffel.hpp"

using namespace warpcore;
using rieffel::MollifierSpec;
using rieffel::QuadratureGrid;

namespace {

minkowski::SkewMatrix q2d(double zeta) {
  return minkowski::standard_q(minkowski::BilinearForm::lorentz(2), zeta);
}

MollifierSpec gaussian() { return {}; }

MollifierSpec product_gaussian() {
  MollifierSpec m;
  m.family = MollifierSpec::Family::ProductGaussian;
  return m;
}

}  // namespace

TEST_CASE("oscillatory factor matches its closed form") {
  QuadratureGrid grid;
  for (double s : {1.0, -1.0})
    for (double a : {0.0, 0.7, -1.3})
      for (double b : {0.0, 0.4, 1.1}) {
        for (double scale : {5.0, 10.0, 20.0}) {
          const Complex num =
              rieffel::detail::oscillatory_factor(a, b, s, scale, scale, grid);
          const Complex exact =
              rieffel::detail::oscillatory_factor_closed_form(a, b, s, scale,
                                                              scale);
          CHECK(std::abs(num - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
        }
      }
}

TEST_CASE("factor tends to the pure phase normalization as scales grow") {
  // As sx, sy -> infinity the factor tends to e^{i a b s ...}; at a = b = 0
  // it tends to 1.
  QuadratureGrid grid;
  const Complex f =
      rieffel::detail::oscillatory_factor(0.0, 0.0, -1.0, 40.0, 40.0, grid);
  CHECK(std::abs(f - Complex(1.0)) < 1e-3);
}

TEST_CASE("quadrature product converges to the exact spectral twist") {
  const auto systems = models::regression_systems();
  const auto q = q2d(0.8);
  int idx = 0;
  for (const auto& sys : systems) {
    const Matrix a = models::random_operator(sys.dim(), 300 + idx);
    const Matrix b = models::random_operator(sys.dim(), 400 + idx);
    ++idx;
    const Matrix exact = rieffel::product_exact(sys, a, b, q);
    const auto res = rieffel::product_quadrature(sys, a, b, q, gaussian());
    CHECK(res.converged);
    CHECK(op_norm(res.value - exact) / op_norm(exact) <= 1e-6);
  }
}

TEST_CASE("mollifier independence of the extrapolated product") {
  const auto sys = models::regression_systems()[1];
  const Matrix a = models::random_operator(sys.dim(), 31);
  const Matrix b = models::random_operator(sys.dim(), 32);
  const auto q = q2d(1.2);
  const auto r1 = rieffel::product_quadrature(sys, a, b, q, gaussian());
  const auto r2 = rieffel::product_quadrature(sys, a, b, q, product_gaussian());
  CHECK(op_norm(r1.value - r2.value) <=
        10.0 * (r1.error_estimate + r2.error_estimate) + 1e-8);
}

TEST_CASE("product at Q = 0 is plain matrix multiplication") {
  const auto sys = models::regression_systems()[2];
  const Matrix a = models::random_operator(sys.dim(), 41);
  const Matrix b = models::random_operator(sys.dim(), 42);
  const auto q = q2d(0.0);
  CHECK(op_norm(rieffel::product_exact(sys, a, b, q) - a * b) <= 1e-12);
}

TEST_CASE("associativity and star compatibility of the exact product") {
  const auto sys = models::regression_systems()[2];
  const Matrix a = models::random_operator(sys.dim(), 51);
  const Matrix b = models::random_operator(sys.dim(), 52);
  const Matrix c = models::random_operator(sys.dim(), 53);
  const auto q = q2d(1.7);
  CHECK(rieffel::check_associativity(sys, a, b, c, q) <= 1e-10);
  CHECK(rieffel::check_star_compat(sys, a, b, q) <= 1e-12);
}

TEST_CASE("non-skew Q is rejected") {
  const auto sys = models::regression_systems()[0];
  const Matrix a = models::random_operator(sys.dim(), 61);
  minkowski::SkewMatrix bad{RealMatrix::Identity(2, 2),
                            minkowski::BilinearForm::lorentz(2)};
  CHECK_THROWS_AS(rieffel::product_exact(sys, a, a, bad),
                  std::invalid_argument);
}

TEST_CASE("frozen regression value of the exact product") {
  // d = 3 system with tuples chi_0 = (0,0), chi_1 = (0.8,-0.4),
  // chi_2 = (0.5,1.1) and Q the zeta = 1 off-diagonal block.  For
  // A = E_{01}, B = E_{12} the only contribution to (A x_Q B)_{02} is the
  // chain k=0, m=1, l=2 with phase pair(x_0 - x_1, Q(x_1 - x_2)):
  //   (chi_0 - chi_1) . Q G (chi_1 - chi_2)
  //   = (-0.8, 0.4) . (1.5, 0.3) = -1.08.
  const auto sys = models::regression_systems()[1];
  const auto q = q2d(1.0);
  // locate the eigenbasis columns carrying each tuple (column order is the
  // diagonalization order, not the construction order)
  auto column_of = [&](double c0, double c1) {
    Vector x(2);
    x << c0, -c1;  // pairing convention applies G
    for (int k = 0; k < sys.dim(); ++k)
      if ((sys.point_of_column(k) - x).cwiseAbs().maxCoeff() < 1e-9) return k;
    FAIL("tuple not found");
    return -1;
  };
  const int k0 = column_of(0.0, 0.0);
  const int k1 = column_of(0.8, -0.4);
  const int k2 = column_of(0.5, 1.1);
  Matrix e01 = Matrix::Zero(3, 3), e12 = Matrix::Zero(3, 3);
  e01(k0, k1) = 1.0;
  e12(k1, k2) = 1.0;
  const Matrix a = sys.from_eigenbasis(e01);
  const Matrix b = sys.from_eigenbasis(e12);
  const Matrix prod = sys.to_eigenbasis(rieffel::product_exact(sys, a, b, q));
  CHECK(std::abs(prod(k0, k2) - std::exp(I * -1.08)) <= 1e-12);
  CHECK(std::abs(prod(k0, k0)) <= 1e-14);
  CHECK(std::abs(prod(k1, k1)) <= 1e-14);
}
