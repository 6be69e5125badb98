#pragma once

// Seeded model families: generic product-structure covariant systems for the
// identity suite, small fixed regression systems for the quadrature oracle,
// and the standard-form tensor models (M_d (x) 1 with an entangled invariant
// vector) for the modular suite.

#include <cstdint>
#include <vector>

#include "warpcore/covariant.hpp"
#include "warpcore/minkowski.hpp"
#include "warpcore/modular.hpp"
#include "warpcore/types.hpp"

namespace warpcore::models {

using covariant::CovariantSystem;

/// Haar-ish random unitary (QR of a Gaussian matrix), deterministic per seed.
Matrix random_unitary(int d, std::uint64_t seed);

/// Gaussian complex matrix.
Matrix random_operator(int d, std::uint64_t seed);

/// Covariant system on C^{d1} (x) C^{d2} with generators acting leg-wise,
/// P_mu = p_mu (x) 1 + 1 (x) r_mu, and an invariant vacuum attached to a zero
/// spectral point on each leg.  Operators of the form a (x) 1 and 1 (x) b
/// satisfy the commutation hypothesis exactly.
struct ProductSystem {
  CovariantSystem sys;
  int d1 = 0, d2 = 0;

  Matrix leg1(const Matrix& a) const;  // a (x) 1
  Matrix leg2(const Matrix& b) const;  // 1 (x) b

  static ProductSystem build(int n, int d1, int d2, std::uint64_t seed);
};

/// Fixed d <= 4, n = 2 systems with O(1) spectral points; the quadrature
/// oracle regression set.
std::vector<CovariantSystem> regression_systems();

/// Standard-form tensor model: H = C^d (x) C^d, R generated by shift and
/// clock on the first leg, Omega = sum_k sqrt(lambda_k) e_k (x) e_k with
/// thermal weights lambda_k = exp(-beta eps_k)/Z, and U = u (x) conj(u)
/// leaving Omega invariant.
struct TensorModel {
  CovariantSystem sys;
  modular::AlgebraSpec algebra;
  CVector omega;
  int d = 0;
  double beta = 0.0;
  std::vector<double> energies;  // eps_k defining the Schmidt weights

  static TensorModel build(int d, double beta, std::uint64_t seed);
};

}  // namespace warpcore::models
