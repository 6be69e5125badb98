#pragma once

// Truncated bosonic Fock space over a finite 2D mass-shell rapidity grid:
// creation/annihilation matrices, total momentum generators, the exported
// covariant system, deformed creation operators and the two-particle
// exchange phase they produce.

#include <cstdint>
#include <string>
#include <vector>

#include "warpcore/covariant.hpp"
#include "warpcore/minkowski.hpp"
#include "warpcore/types.hpp"

namespace warpcore::fock {

using covariant::CovariantSystem;
using minkowski::SkewMatrix;

class FockModel {
 public:
  /// Occupation basis of all (n_1, ..., n_M) with sum <= cutoff; throws when
  /// the resulting dimension exceeds dim_cap.
  FockModel(double mass, std::vector<double> rapidities, int cutoff,
            int dim_cap = 5000);

  double mass() const { return mass_; }
  int modes() const { return static_cast<int>(rapidities_.size()); }
  int cutoff() const { return cutoff_; }
  int dim() const { return dim_; }
  const std::vector<double>& rapidities() const { return rapidities_; }

  /// Mass-shell momentum m (cosh theta, sinh theta).
  Vector momentum(double theta) const;

  const Matrix& creation(int mode) const { return creation_[mode]; }
  const Matrix& annihilation(int mode) const { return annihilation_[mode]; }
  /// P_mu = sum_i p_mu(theta_i) a_i^dag a_i (diagonal).
  const Matrix& total_momentum(int mu) const { return momentum_[mu]; }
  const CVector& vacuum() const { return vacuum_; }

  /// Orthogonal projection onto total particle number <= k.
  Matrix sector_projection(int k) const;

  /// max_{i,j} ||[a_i, a_j^dag] - delta_ij| restricted to number <= cutoff-1.
  double ccr_residual() const;

  /// Covariant system on the 2D Lorentz form whose spectral points are the
  /// total momentum values; the vacuum is the invariant vector.
  const CovariantSystem& system() const { return system_; }

  /// Field operator phi(f) = sum_i f_i a_i^dag + conj(f_i) a_i.
  Matrix field(const CVector& coeff) const;

 private:
  double mass_;
  std::vector<double> rapidities_;
  int cutoff_;
  int dim_;
  std::vector<std::vector<int>> occupations_;
  std::vector<Matrix> creation_;
  std::vector<Matrix> annihilation_;
  std::vector<Matrix> momentum_;
  CVector vacuum_;
  CovariantSystem system_;
};

/// (a^dag(theta_i))_Q through the exported covariant system.
Matrix deformed_creation(const FockModel& model, int mode, const SkewMatrix& q);

/// Ratio <v, a^dag_Q(t1) a^dag_Q(t2) Omega> / <v, a^dag_Q(t2) a^dag_Q(t1) Omega>
/// on v = a^dag(t1) a^dag(t2) Omega; unit modulus, equals
/// exp(2 i p(t1) Q p(t2)) for the deformed model.
Complex exchange_phase(const FockModel& model, int mode1, int mode2,
                       const SkewMatrix& q);

struct WedgeCommutator {
  double hypothesis_residual;  // max over spectral point pairs
  double conclusion_residual;  // sector-restricted ||[phi(f)_Q, phi(g)_{-Q}]||
};

/// Diagnostic only: grid truncation breaks exact locality, so no zero
/// contract -- only the implication from a vanishing hypothesis is asserted.
WedgeCommutator wedge_commutator_residual(const FockModel& model,
                                          const CVector& f, const CVector& g,
                                          const SkewMatrix& q);

struct ScatteringRow {
  double theta1, theta2;
  double pqp;  // p(theta1) Q p(theta2)
  Complex phase;
};

std::vector<ScatteringRow> scattering_table(
    const FockModel& model, const SkewMatrix& q,
    const std::vector<std::pair<int, int>>& mode_pairs);

/// CSV serialization: theta1,theta2,pQp,phase_re,phase_im,modulus_defect.
std::string scattering_csv(const std::vector<ScatteringRow>& rows);

}  // namespace warpcore::fock
