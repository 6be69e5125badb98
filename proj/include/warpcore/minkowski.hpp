#pragma once

// Minkowski/Euclidean bilinear forms, wedge geometry, Poincare elements,
// admissible deformation matrices and the span of deformation directions.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warpcore/types.hpp"

namespace warpcore::minkowski {

enum class FormKind { Lorentz, Euclidean };

/// Symmetric bilinear form with |det G| = 1.  The Lorentz form is
/// diag(1,-1,...,-1); pairings below are always x^T G y.
class BilinearForm {
 public:
  BilinearForm(int n, FormKind kind);

  int dim() const { return n_; }
  FormKind kind() const { return kind_; }
  const RealMatrix& gram() const { return gram_; }

  double pair(const Vector& x, const Vector& y) const;

  /// Transpose of M with respect to the form: G M^t G.
  RealMatrix form_transpose(const RealMatrix& m) const;

  static BilinearForm lorentz(int n) { return {n, FormKind::Lorentz}; }
  static BilinearForm euclidean(int n) { return {n, FormKind::Euclidean}; }

 private:
  int n_;
  FormKind kind_;
  RealMatrix gram_;
};

/// p in the closed (or open) forward light cone.
bool in_forward_cone(const Vector& p, bool strict = false);

/// Affine Poincare element x -> lorentz * x + translation.  The Lorentz part
/// satisfies L^t G L = G; proper orthochronous unless flagged otherwise.
struct PoincareElement {
  Vector translation;
  RealMatrix lorentz;
  bool orthochronous = true;

  int dim() const { return static_cast<int>(lorentz.rows()); }
  Vector apply(const Vector& x) const { return lorentz * x + translation; }
  PoincareElement compose(const PoincareElement& other) const;
  PoincareElement inverse() const;

  static PoincareElement identity(int n);
  static PoincareElement translationOf(const Vector& a);
};

/// Boost in the 0-1 plane with rapidity 2*pi*t (the modular flow
/// parametrization), fixing the reference wedge.
PoincareElement boost(double t, int n);

/// Spacetime reflection j: (x0, x1, x_perp) -> (-x0, -x1, x_perp).
/// Not orthochronous; maps W onto W'.
PoincareElement reflection_j(int n);

/// Rotation by angle phi in the (axis_a, axis_b) spatial plane.
PoincareElement rotation(int n, int axis_a, int axis_b, double phi);

/// Wedge region.  The reference wedge is {x : x1 >= |x0|}; transformed
/// wedges carry a Poincare element and membership is tested by pullback.
/// `complement` selects the causal complement W' = -W of the carried wedge.
struct Wedge {
  PoincareElement carrier;
  bool complement = false;

  bool contains(const Vector& x) const;

  static Wedge reference(int n) { return {PoincareElement::identity(n), false}; }
  static Wedge referenceComplement(int n) {
    return {PoincareElement::identity(n), true};
  }
};

/// Skew matrix w.r.t. a bilinear form: pair(x, Qy) = -pair(y, Qx).
struct SkewMatrix {
  RealMatrix q;
  BilinearForm form;

  int dim() const { return form.dim(); }
  /// max |pair(x, Q y) + pair(y, Q x)| deviation over a basis; 0 iff skew.
  double skewness_residual() const;
};

/// Standard admissible matrix: the zeta block in the 0-1 coordinates plus,
/// for n = 4, the transverse eta rotation block.
SkewMatrix standard_q(const BilinearForm& form, double zeta,
                      std::optional<double> eta = std::nullopt);

enum class CheckMode { Analytic, Sampled };

struct AdmissibilityReport {
  bool cone_into_wedge = false;        // (i)  Q V+ inside W
  bool invariant_under_stabilizer = false;  // (ii) L Q L^T = Q
  bool flipped_by_wedge_flip = false;  // (iii) L Q L^T = -Q (n >= 3)
  CheckMode cone_mode = CheckMode::Sampled;
  double stabilizer_residual = 0.0;
  double flip_residual = 0.0;
  double cone_margin = 0.0;  // worst wedge-membership margin over samples
  bool admissible() const {
    return cone_into_wedge && invariant_under_stabilizer &&
           flipped_by_wedge_flip;
  }
};

AdmissibilityReport check_admissible(const SkewMatrix& q, int samples,
                                     std::uint64_t seed);

enum class WedgeMapClass { Preserves, Flips, Neither };

/// Sampled classification of lambda W against W / W' on a deterministic
/// point cloud inside the wedge.
WedgeMapClass classify_wedge_map(const PoincareElement& lambda, const Wedge& w,
                                 int samples, std::uint64_t seed = 7);

struct SpanReport {
  int sample_count = 0;
  int span_rank = 0;
  double residual = 0.0;  // least-squares distance of Q from the sampled span
  bool q_in_span() const { return residual <= 1e-10; }
};

/// Span of {L Q L^T - Q} over Lorentz transformations near the identity;
/// reports whether Q itself lies in that span.  Requires n >= 3 and Q != 0.
SpanReport span_deformation_directions(const SkewMatrix& q,
                                       double neighborhood_radius, int samples,
                                       std::uint64_t seed);

}  // namespace warpcore::minkowski
