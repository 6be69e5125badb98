#pragma once

// Finite-dimensional von Neumann algebra machinery: generated *-algebras,
// commutants, Tomita-Takesaki data (S, Delta, J), warped algebras and the
// invariance / duality statements that hold for them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warpcore/covariant.hpp"
#include "warpcore/minkowski.hpp"
#include "warpcore/types.hpp"

namespace warpcore::modular {

using covariant::CovariantSystem;
using minkowski::PoincareElement;
using minkowski::SkewMatrix;
using minkowski::Wedge;

/// Unital *-algebra of d x d matrices, stored as a Hilbert-Schmidt
/// orthonormal basis of its linear span.  In finite dimension the generated
/// *-algebra coincides with the bicommutant, so closure under products and
/// adjoints is the whole construction.
struct AlgebraSpec {
  int d = 0;
  std::vector<Matrix> generators;
  std::vector<Matrix> basis;  // HS-orthonormal, closed span, contains 1

  int dim() const { return static_cast<int>(basis.size()); }

  /// Closure of {1, generators, adjoints} under multiplication.
  static AlgebraSpec generate(std::vector<Matrix> gens);

  /// Worst closure defect: max over basis pairs of the HS-distance of the
  /// product (and of each adjoint) from the span.
  double closure_residual() const;
};

namespace span {

/// HS-orthonormal basis of the span of the given matrices (tolerance on
/// singular values: 1e-10 relative).
std::vector<Matrix> orthonormalize(const std::vector<Matrix>& mats);

/// Max HS-distance of elements of `inner` from span(outer); 0 iff included.
double inclusion_residual(const std::vector<Matrix>& inner,
                          const std::vector<Matrix>& outer);

/// Symmetrized span distance: max of the two inclusion residuals.
double equality_residual(const std::vector<Matrix>& a,
                         const std::vector<Matrix>& b);

}  // namespace span

/// Basis of {X : [X, A] = 0 for all generators A}, via the null space of the
/// stacked commutator system.
AlgebraSpec commutant(const AlgebraSpec& spec);

struct CyclicSeparating {
  bool cyclic = false;
  bool separating = false;
};

CyclicSeparating cyclic_separating(const AlgebraSpec& spec, const CVector& omega);

/// Tomita data for (R, Omega).  The antilinear maps S and J are stored
/// through their linear parts with the conjugation acting first in the
/// standard coordinate basis: S v = S_lin * conj(v), J v = J_lin * conj(v).
struct ModularData {
  Matrix s_lin;   // closure of A Omega -> A* Omega
  Matrix delta;   // S*S, positive
  Matrix j_lin;   // linear part of J = S Delta^{-1/2}

  /// J A J as a linear operator: J_lin * conj(A) * conj(J_lin).
  Matrix conj_by_j(const Matrix& a) const;

  CVector apply_s(const CVector& v) const { return s_lin * v.conjugate(); }
  CVector apply_j(const CVector& v) const { return j_lin * v.conjugate(); }

  /// Delta^{it} as a matrix.
  Matrix delta_it(double t) const;

  struct SelfCheck {
    double polar_residual;       // ||S - J Delta^{1/2}|| through linear parts
    double j_involution;         // ||J^2 - 1||
    double j_delta_j;            // ||J Delta J - Delta^{-1}||
    double s_action;             // max basis ||S A Omega - A* Omega||
    double s_involution;         // max basis ||S^2 A Omega - A Omega||
    double flow_invariance;      // max sampled t of span residual of
                                 // Delta^{it} R Delta^{-it} against R
    double j_commutant;          // span residual of J R J against R'
  };
  SelfCheck self_check(const AlgebraSpec& spec, const CVector& omega) const;
};

/// Requires Omega cyclic and separating; throws otherwise.  Callers that
/// have already verified the preconditions may skip the (commutant-sized)
/// re-check.
ModularData tomita(const AlgebraSpec& spec, const CVector& omega,
                   bool verify_preconditions = true);

/// R_Q: generators warped entrywise, then closure.
AlgebraSpec warp_algebra(const CovariantSystem& sys, const AlgebraSpec& spec,
                         const SkewMatrix& q);

struct ModularInvarianceReport {
  bool applicable = false;      // preconditions verified
  std::string skip_reason;
  double delta_residual = 0.0;  // ||Delta_Q - Delta|| / ||Delta||
  double j_residual = 0.0;      // ||J_Q - J|| through linear parts
};

/// Computes the modular pairs of (R, Omega) and (R_Q, Omega) independently
/// and compares them.  Preconditions (Omega invariant under U, cyclic and
/// separating for both algebras) are checked; failure yields a skip report.
ModularInvarianceReport check_modular_invariance(const CovariantSystem& sys,
                                                 const AlgebraSpec& spec,
                                                 const CVector& omega,
                                                 const SkewMatrix& q);

struct DualityReport {
  bool applicable = false;
  std::string skip_reason;
  double residual = 0.0;  // span distance of (R_Q)' from (R')_{-Q}
};

DualityReport check_commutant_duality(const CovariantSystem& sys,
                                      const AlgebraSpec& spec,
                                      const CVector& omega,
                                      const SkewMatrix& q);

struct BorchersReport {
  bool spectrum_in_cone = false;      // joint spectrum of P inside V+
  double omega_invariance = 0.0;      // max ||P_mu Omega||
  bool cyclic = false;
  bool separating = false;
  double half_sided_residual = 0.0;   // max sampled x in W of the inclusion
                                      // residual of alpha_x(R) in R
  bool inclusion_is_equality = false; // finite-dimensional degeneracy flag
};

BorchersReport borchers_report(const CovariantSystem& sys,
                               const AlgebraSpec& spec, const CVector& omega,
                               const Wedge& wedge, int samples = 16,
                               std::uint64_t seed = 5);

/// A represented Poincare element: U(lambda), possibly antiunitary (the
/// conjugation convention matches warp::SymmetryOp).
struct RepresentedElement {
  PoincareElement lambda;
  Matrix op;
  bool antiunitary = false;
};

struct WedgeNetAudit {
  struct Pair {
    int i = 0, j = 0;
    bool geometric_inclusion = false;   // lambda_i W inside lambda_j W
    bool geometric_causal = false;      // lambda_i W inside (lambda_j W)'
    double algebra_inclusion_residual = -1.0;  // -1 when not applicable
    double commutation_residual = -1.0;
  };
  std::vector<Pair> pairs;
  double worst_isotony = 0.0;
  double worst_causality = 0.0;
};

/// Audits the finitely generated net A(lambda W) = U(lambda) R U(lambda)^{-1}
/// over the supplied elements: isotony and causality verdicts per pair.
WedgeNetAudit wedge_net(const CovariantSystem& sys, const AlgebraSpec& spec,
                        const std::vector<RepresentedElement>& elements,
                        int geometry_samples = 64, std::uint64_t seed = 13);

struct MaximalCausalityReport {
  double undeformed_residual = 0.0;  // span(U(flip) R U(flip)^{-1}) vs R'
  double deformed_residual = 0.0;    // same for R_Q vs (R_Q)'
};

/// flip must carry lambda W = W'; the deformed side uses warp_algebra with Q
/// and compares against the commutant of R_Q.
MaximalCausalityReport check_maximal_causality(const CovariantSystem& sys,
                                               const AlgebraSpec& spec,
                                               const RepresentedElement& flip,
                                               const SkewMatrix& q);

struct EquivalenceReport {
  bool found = false;
  double unitarity_residual = 0.0;
  double omega_residual = 0.0;
  double generator_residual = 0.0;   // U-intertwining on the P_mu
  double algebra_residual = 0.0;     // span residual of V R_A V^{-1} vs R_B
  Matrix intertwiner;
};

/// Searches for a unitary V with V Omega_A = Omega_B, V P_{A,mu} = P_{B,mu} V
/// and V R_A V^{-1} = R_B by solving the linear intertwining system.  A
/// negative verdict means "not found by rank analysis", not "inequivalent".
EquivalenceReport check_equivalence(const CovariantSystem& sys_a,
                                    const AlgebraSpec& spec_a,
                                    const CVector& omega_a,
                                    const CovariantSystem& sys_b,
                                    const AlgebraSpec& spec_b,
                                    const CVector& omega_b);

}  // namespace warpcore::modular
