#pragma once

// Warped convolution A_Q and executable versions of the identities it
// satisfies: adjoint compatibility, homomorphism onto the deformed product,
// covariance, commutation preservation, group law, inverse and vacuum
// invariance.

#include "warpcore/rieffel.hpp"

namespace warpcore::warp {

using covariant::CovariantSystem;
using minkowski::SkewMatrix;
using rieffel::MollifierSpec;
using rieffel::QuadratureGrid;
using rieffel::QuadratureResult;

/// Warped convolution, exact path: entrywise phase multiplication
/// (A_Q)_{kl} = exp(i x_k Q x_l) A_{kl} in the joint eigenbasis.
/// Validated against warp_quadrature.  1_Q = 1.
Matrix warp_exact(const CovariantSystem& sys, const Matrix& a,
                  const SkewMatrix& q);

enum class Ordering { Left, Right };

/// Oscillatory-integral evaluation of
///   (2 pi)^{-n} \iint f(eps x, eps y) e^{-ixy} alpha_{Qx}(A) U(y)   (left)
///   (2 pi)^{-n} \iint f(eps x, eps y) e^{-ixy} U(x) alpha_{Qy}(A)   (right)
/// extrapolated across the epsilon schedule.
QuadratureResult warp_quadrature(const CovariantSystem& sys, const Matrix& a,
                                 const SkewMatrix& q, const MollifierSpec& moll,
                                 const QuadratureGrid& grid = {},
                                 Ordering ordering = Ordering::Left);

/// ||(A_Q)^* - (A^*)_Q||.
double check_star(const CovariantSystem& sys, const Matrix& a,
                  const SkewMatrix& q);

/// ||A_Q B_Q - (A x_Q B)_Q||.
double check_homomorphism(const CovariantSystem& sys, const Matrix& a,
                          const Matrix& b, const SkewMatrix& q);

struct VacuumCheck {
  double invariance_residual;  // ||A_Q Omega - A Omega||
  double product_residual;     // ||A_Q B Omega - (A x_Q B) Omega||
};

/// Requires an invariant vacuum vector on the system.
VacuumCheck check_vacuum(const CovariantSystem& sys, const Matrix& a,
                         const Matrix& b, const SkewMatrix& q);

/// (Anti)unitary symmetry operator; the conjugation, when present, is
/// entrywise in the joint eigenbasis of the system it acts on.
struct SymmetryOp {
  Matrix unitary;
  bool antiunitary = false;

  CVector apply(const CovariantSystem& sys, const CVector& v) const;
  Matrix conjugate_op(const CovariantSystem& sys, const Matrix& a) const;
};

/// Covariance V A_Q V^{-1} = (V A V^{-1})_{sigma M Q M^T}; the intertwining
/// precondition V U(x) V^{-1} = U(M x) is verified on the spectral points.
double check_covariance(const CovariantSystem& sys, const Matrix& a,
                        const SkewMatrix& q, const SymmetryOp& v,
                        const RealMatrix& m);

struct CommutationCheck {
  double hypothesis_residual;  // max_{j,k} ||[a_{Q x_j}(A), a_{-Q x_k}(B)]||
  double conclusion_residual;  // ||[A_Q, B_{-Q}]||
};

CommutationCheck check_commutation(const CovariantSystem& sys, const Matrix& a,
                                   const Matrix& b, const SkewMatrix& q);

/// ||(A_{Q1})_{Q2} - A_{Q1+Q2}||.
double check_group_law(const CovariantSystem& sys, const Matrix& a,
                       const SkewMatrix& q1, const SkewMatrix& q2);

struct InjectivityReport {
  double linearity_residual;   // on a random pair
  double round_trip_residual;  // max over basis of ||((E)_Q)_{-Q} - E||
  double min_basis_norm;       // min over basis of ||pi_Q(E)||
  bool injective() const {
    return round_trip_residual <= 1e-12 && min_basis_norm > 0.5;
  }
};

/// Linearity, invertibility (inverse warp with -Q) and absence of kernel of
/// the warping map, probed on the matrix-unit basis in the joint eigenbasis.
InjectivityReport check_injectivity(const CovariantSystem& sys,
                                    const SkewMatrix& q, std::uint64_t seed = 11);

}  // namespace warpcore::warp
