#include "warpcore/models.hpp"

#include <cmath>
#include <random>

namespace warpcore::models {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

Matrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  // fix the phase convention so the result is seed-deterministic
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    if (std::abs(rj) > 0) q.col(j) *= rj / std::abs(rj);
  }
  return q;
}

Matrix random_operator(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix ProductSystem::leg1(const Matrix& a) const {
  return kron(a, Matrix::Identity(d2, d2));
}

Matrix ProductSystem::leg2(const Matrix& b) const {
  return kron(Matrix::Identity(d1, d1), b);
}

ProductSystem ProductSystem::build(int n, int d1, int d2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  // Per-leg spectral tuples; index 0 is the zero point carrying the vacuum.
  auto leg_tuples = [&](int d) {
    std::vector<Vector> tuples(d, Vector::Zero(n));
    for (int k = 1; k < d; ++k)
      for (int mu = 0; mu < n; ++mu) tuples[k](mu) = uni(rng);
    return tuples;
  };
  const auto t1 = leg_tuples(d1);
  const auto t2 = leg_tuples(d2);
  const Matrix u1 = random_unitary(d1, rng());
  const Matrix u2 = random_unitary(d2, rng());

  ProductSystem out;
  out.d1 = d1;
  out.d2 = d2;

  std::vector<Matrix> gens;
  for (int mu = 0; mu < n; ++mu) {
    CVector diag1(d1), diag2(d2);
    for (int k = 0; k < d1; ++k) diag1(k) = t1[k](mu);
    for (int k = 0; k < d2; ++k) diag2(k) = t2[k](mu);
    const Matrix p1 = u1 * diag1.asDiagonal() * u1.adjoint();
    const Matrix p2 = u2 * diag2.asDiagonal() * u2.adjoint();
    Matrix p = kron(p1, Matrix::Identity(d2, d2)) +
               kron(Matrix::Identity(d1, d1), p2);
    gens.push_back((p + p.adjoint()) / 2.0);
  }
  const CVector omega = kron_vec(u1.col(0), u2.col(0));
  out.sys = CovariantSystem::build(std::move(gens),
                                   minkowski::BilinearForm::lorentz(n), omega);
  return out;
}

std::vector<CovariantSystem> regression_systems() {
  const auto form = minkowski::BilinearForm::lorentz(2);
  std::vector<CovariantSystem> out;

  auto make = [&](const std::vector<Vector>& tuples, std::uint64_t seed,
                  bool with_vacuum) {
    const int d = static_cast<int>(tuples.size());
    const Matrix u = random_unitary(d, seed);
    std::vector<Matrix> gens;
    for (int mu = 0; mu < 2; ++mu) {
      CVector diag(d);
      for (int k = 0; k < d; ++k) diag(k) = tuples[k](mu);
      Matrix p = u * diag.asDiagonal() * u.adjoint();
      gens.push_back((p + p.adjoint()) / 2.0);
    }
    std::optional<CVector> omega;
    if (with_vacuum) omega = CVector(u.col(0));
    return CovariantSystem::build(std::move(gens), form, omega);
  };

  auto v = [](double a, double b) {
    Vector x(2);
    x << a, b;
    return x;
  };

  out.push_back(make({v(0.0, 0.0), v(1.0, 0.3)}, 101, true));
  out.push_back(make({v(0.0, 0.0), v(0.8, -0.4), v(0.5, 1.1)}, 102, true));
  out.push_back(
      make({v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0), v(0.6, -0.7)}, 103, true));
  out.push_back(
      make({v(-0.3, 0.9), v(0.7, 0.2), v(1.2, -0.5), v(0.1, 0.4)}, 104, false));
  return out;
}

TensorModel TensorModel::build(int d, double beta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0);

  TensorModel out;
  out.d = d;
  out.beta = beta;
  for (int k = 0; k < d; ++k) out.energies.push_back(uni(rng));

  double z = 0.0;
  for (double e : out.energies) z += std::exp(-beta * e);
  CVector omega = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k)
    omega += std::sqrt(std::exp(-beta * out.energies[k]) / z) *
             kron_vec(CVector::Unit(d, k), CVector::Unit(d, k));
  out.omega = omega;

  // Generators P_mu = p_mu (x) 1 - 1 (x) p_mu with p_mu diagonal in the
  // Schmidt basis, so U(x) = u(x) (x) conj(u(x)) and Omega is invariant.
  std::vector<Matrix> gens;
  const Matrix id = Matrix::Identity(d, d);
  for (int mu = 0; mu < 2; ++mu) {
    CVector diag(d);
    for (int k = 0; k < d; ++k) diag(k) = uni(rng) - 1.0;
    const Matrix p = Matrix(diag.asDiagonal());
    gens.push_back(kron(p, id) - kron(id, p.transpose()));
  }
  out.sys = CovariantSystem::build(std::move(gens),
                                   minkowski::BilinearForm::lorentz(2), omega);

  // Shift and clock generate the full M_d on the first leg.
  Matrix shift = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) shift((k + 1) % d, k) = 1.0;
  Matrix clock = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    clock(k, k) = std::exp(I * (2.0 * M_PI * k / d));
  out.algebra = modular::AlgebraSpec::generate(
      {kron(shift, id), kron(clock, id)});
  return out;
}

}  // namespace warpcore::models
