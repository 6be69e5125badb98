#pragma once

// Finite-dimensional covariant dynamical systems: commuting Hermitian
// generators, joint spectral data, translation unitaries and the automorphic
// action they implement.  In finite dimension every operator is smooth, so
// no smoothness bookkeeping appears anywhere.

#include <cstdint>
#include <optional>
#include <vector>

#include "warpcore/minkowski.hpp"
#include "warpcore/types.hpp"

namespace warpcore::covariant {

using minkowski::BilinearForm;

/// One Bohr component of an operator: the part transforming with character
/// exp(i q y) under the automorphic action.
struct BohrComponent {
  Vector character;  // q, in the pairing convention
  Matrix component;
};

/// Covariant system on C^d with commuting Hermitian generators P_mu.
///
/// Spectral points are stored in the pairing convention: U(y) is
/// sum_j exp(i x_j y) E_j with x_j y the chosen bilinear form, so for the
/// Lorentz form x_j = G * (joint eigenvalue tuple of P).  This removes all
/// metric factors from the deformation formulas built on top.
class CovariantSystem {
 public:
  /// Empty placeholder system; every accessor is meaningless until a built
  /// system is assigned over it.
  CovariantSystem() : form_(BilinearForm::euclidean(2)) {}

  /// Builds the joint spectral resolution.  Generators must be Hermitian
  /// and pairwise commuting within 1e-12; omega, when given, must be a
  /// unit vector.
  static CovariantSystem build(std::vector<Matrix> generators,
                               const BilinearForm& form,
                               std::optional<CVector> omega = std::nullopt);

  int dim() const { return d_; }
  int spacetime_dim() const { return form_.dim(); }
  const BilinearForm& form() const { return form_; }
  const std::vector<Matrix>& generators() const { return generators_; }

  /// Joint eigenbasis: unitary whose k-th column is the k-th eigenvector.
  const Matrix& eigenbasis() const { return eigenbasis_; }
  /// Spectral point attached to eigenbasis column k (pairing convention).
  const Vector& point_of_column(int k) const { return points_[column_point_[k]]; }
  /// Distinct spectral points and their projections.
  const std::vector<Vector>& points() const { return points_; }
  std::vector<Matrix> projections() const;

  const std::optional<CVector>& omega() const { return omega_; }
  bool has_invariant_omega() const;

  /// Translation unitary U(x) = sum_j exp(i x_j x) E_j.
  Matrix translate(const Vector& x) const;

  /// alpha_x(A) = U(x) A U(x)^{-1}.
  Matrix alpha(const Vector& x, const Matrix& a) const;

  /// Conjugate into / out of the joint eigenbasis.
  Matrix to_eigenbasis(const Matrix& a) const;
  Matrix from_eigenbasis(const Matrix& a) const;

  /// Splits A into components with sharp transformation character under
  /// alpha; characters coinciding within 1e-10 are merged.
  std::vector<BohrComponent> bohr_decompose(const Matrix& a) const;

  struct SpectrumReport {
    std::vector<Vector> points;          // pairing convention
    std::vector<Vector> euclid_points;   // joint eigenvalue tuples of P
    std::vector<bool> in_cone;           // cone test on the eigenvalue tuples
    std::vector<bool> interior;
    bool has_invariant_vector = false;
  };
  SpectrumReport spectrum_report() const;

 private:
  CovariantSystem(const BilinearForm& form) : form_(form) {}

  int d_ = 0;
  BilinearForm form_;
  std::vector<Matrix> generators_;
  Matrix eigenbasis_;
  std::vector<Vector> points_;        // distinct, pairing convention
  std::vector<Vector> euclid_points_; // distinct joint eigenvalue tuples
  std::vector<int> column_point_;     // eigenbasis column -> point index
  std::optional<CVector> omega_;
};

}  // namespace warpcore::covariant
