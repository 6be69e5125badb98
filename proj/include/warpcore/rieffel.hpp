#pragma once

// Deformed product with two evaluation paths: the exact spectral-twist
// closed form and an oscillatory-integral quadrature oracle with Richardson
// extrapolation in the regularization parameter.

#include <vector>

#include "warpcore/covariant.hpp"
#include "warpcore/minkowski.hpp"
#include "warpcore/types.hpp"

namespace warpcore::rieffel {

using covariant::CovariantSystem;
using minkowski::SkewMatrix;

/// Regularizing test function f with f(0,0) = 1 and the epsilon schedule
/// used for extrapolation.  "Gaussian" is isotropic in all 2n variables;
/// "product Gaussian" uses distinct per-axis widths, giving a genuinely
/// different f for the f-independence check.
struct MollifierSpec {
  enum class Family { Gaussian, ProductGaussian };
  Family family = Family::Gaussian;
  // The extrapolation error scales like (eps/width)^{2k}; width 2 keeps the
  // three-point Richardson residual comfortably below 1e-7 for O(1) spectra.
  double width = 2.0;
  std::vector<double> eps_schedule{0.2, 0.1, 0.05};

  double width_x(int axis) const;
  double width_y(int axis) const;
  void validate() const;  // width > 0, schedule strictly decreasing
};

/// Controls for the iterated 2n-dimensional quadrature.  The oscillatory
/// y-integral concentrates the x-integrand in a window of width O(eps)
/// around its stationary point; radius and window factors are in units of
/// the respective Gaussian scales.
struct QuadratureGrid {
  double radius_factor = 9.0;   // truncation radius, units of envelope width
  double window_factor = 12.0;  // outer stationary window, units of 1/sy
  int min_inner_nodes = 64;
  int min_outer_nodes = 96;

  void validate(double min_eps) const;
};

struct ConvergenceRow {
  double eps;
  double value_norm;
  double increment;  // ||value(eps_i) - value(eps_{i-1})||, 0 for first row
};

struct QuadratureResult {
  Matrix value;            // Richardson-extrapolated limit
  double error_estimate;   // last extrapolation increment
  bool converged;          // raw increments decreasing along the schedule
  std::vector<ConvergenceRow> table;
};

/// Exact spectral-twist product: in the joint eigenbasis
///   (A x_Q B)_{kl} = sum_m exp(i (x_k - x_m) Q (x_m - x_l)) A_{km} B_{ml}.
/// Validated against product_quadrature before being relied on.
Matrix product_exact(const CovariantSystem& sys, const Matrix& a,
                     const Matrix& b, const SkewMatrix& q);

/// Oscillatory-integral evaluation of the deformed product,
///   (2 pi)^{-n} \iint f(eps x, eps y) e^{-i x y} alpha_{Qx}(A) alpha_y(B),
/// extrapolated across the epsilon schedule (polynomial model in eps^2).
QuadratureResult product_quadrature(const CovariantSystem& sys, const Matrix& a,
                                    const Matrix& b, const SkewMatrix& q,
                                    const MollifierSpec& moll,
                                    const QuadratureGrid& grid = {});

/// ||(A x_Q B) x_Q C - A x_Q (B x_Q C)|| via the exact path.
double check_associativity(const CovariantSystem& sys, const Matrix& a,
                           const Matrix& b, const Matrix& c,
                           const SkewMatrix& q);

/// ||(A x_Q B)^* - B^* x_Q A^*|| via the exact path.
double check_star_compat(const CovariantSystem& sys, const Matrix& a,
                         const Matrix& b, const SkewMatrix& q);

/// Operator norm of the warped convolution A_Q; the finite-dimensional
/// surrogate for the deformed C*-norm (the representation is faithful).
double deformed_norm(const CovariantSystem& sys, const Matrix& a,
                     const SkewMatrix& q);

namespace detail {

/// One scale-separated factor of the oscillatory integral:
///   (2 pi)^{-1} \iint dx dy exp(-x^2/(2 sx^2) - y^2/(2 sy^2))
///                          exp(i (a x + b y + s x y)),
/// with s = +-1, evaluated by iterated trapezoid sums.
Complex oscillatory_factor(double a, double b, double s, double sx, double sy,
                           const QuadratureGrid& grid);

/// Closed form of the same factor (Gaussian integral); used only as a
/// self-check of the quadrature internals in tests.
Complex oscillatory_factor_closed_form(double a, double b, double s, double sx,
                                       double sy);

/// Full 2n-dimensional regularized integral of
///   e^{-i x y} e^{i (u x)} e^{i (v y)}
/// against the mollifier at scale eps, factorized over axes.  u x and v y
/// are bilinear-form pairings.
Complex phase_integral(const CovariantSystem& sys, const Vector& u,
                       const Vector& v, double eps, const MollifierSpec& moll,
                       const QuadratureGrid& grid);

/// Richardson extrapolation (Neville tableau, polynomial in eps^2).
QuadratureResult extrapolate(const std::vector<double>& eps_schedule,
                             const std::vector<Matrix>& values);

}  // namespace detail

}  // namespace warpcore::rieffel
