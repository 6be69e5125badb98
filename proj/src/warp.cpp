#include "warpcore/warp.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace warpcore::warp {

namespace {

void require_skew(const SkewMatrix& q) {
  if (q.skewness_residual() > 1e-10)
    throw std::invalid_argument("Q is not skew w.r.t. the bilinear form");
}

SkewMatrix scaled(const SkewMatrix& q, double factor) {
  return {factor * q.q, q.form};
}

}  // namespace

Matrix warp_exact(const CovariantSystem& sys, const Matrix& a,
                  const SkewMatrix& q) {
  require_skew(q);
  const int d = sys.dim();
  Matrix at = sys.to_eigenbasis(a);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const double phi =
          sys.form().pair(sys.point_of_column(k), q.q * sys.point_of_column(l));
      at(k, l) *= std::exp(I * phi);
    }
  return sys.from_eigenbasis(at);
}

QuadratureResult warp_quadrature(const CovariantSystem& sys, const Matrix& a,
                                 const SkewMatrix& q, const MollifierSpec& moll,
                                 const QuadratureGrid& grid,
                                 Ordering ordering) {
  require_skew(q);
  moll.validate();
  grid.validate(moll.eps_schedule.back());
  const int d = sys.dim();
  const Matrix at = sys.to_eigenbasis(a);
  const RealMatrix qt = sys.form().form_transpose(q.q);

  std::vector<Matrix> values;
  for (double eps : moll.eps_schedule) {
    Matrix val = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        if (at(k, l) == Complex(0.0)) continue;
        const Vector diff = qt * (sys.point_of_column(k) - sys.point_of_column(l));
        // left:  alpha_{Qx}(A) U(y); right: U(x) alpha_{Qy}(A)
        const Vector u = ordering == Ordering::Left ? diff : sys.point_of_column(k);
        const Vector v = ordering == Ordering::Left ? sys.point_of_column(l) : diff;
        val(k, l) = rieffel::detail::phase_integral(sys, u, v, eps, moll, grid) *
                    at(k, l);
      }
    values.push_back(sys.from_eigenbasis(val));
  }
  return rieffel::detail::extrapolate(moll.eps_schedule, values);
}

double check_star(const CovariantSystem& sys, const Matrix& a,
                  const SkewMatrix& q) {
  return op_norm(warp_exact(sys, a, q).adjoint() -
                 warp_exact(sys, a.adjoint(), q));
}

double check_homomorphism(const CovariantSystem& sys, const Matrix& a,
                          const Matrix& b, const SkewMatrix& q) {
  const Matrix lhs = warp_exact(sys, a, q) * warp_exact(sys, b, q);
  const Matrix rhs = warp_exact(sys, rieffel::product_exact(sys, a, b, q), q);
  return op_norm(lhs - rhs);
}

VacuumCheck check_vacuum(const CovariantSystem& sys, const Matrix& a,
                         const Matrix& b, const SkewMatrix& q) {
  if (!sys.has_invariant_omega())
    throw std::invalid_argument("check_vacuum: system has no invariant vacuum");
  const CVector omega = *sys.omega();
  VacuumCheck out;
  out.invariance_residual = (warp_exact(sys, a, q) * omega - a * omega).norm();
  out.product_residual =
      (warp_exact(sys, a, q) * (b * omega) -
       rieffel::product_exact(sys, a, b, q) * omega)
          .norm();
  return out;
}

CVector SymmetryOp::apply(const CovariantSystem& sys, const CVector& v) const {
  if (!antiunitary) return unitary * v;
  const Matrix& e = sys.eigenbasis();
  return unitary * (e * (e.adjoint() * v).conjugate());
}

Matrix SymmetryOp::conjugate_op(const CovariantSystem& sys,
                                const Matrix& a) const {
  if (!antiunitary) return unitary * a * unitary.adjoint();
  const Matrix& e = sys.eigenbasis();
  const Matrix conj_a = e * (e.adjoint() * a * e).conjugate() * e.adjoint();
  return unitary * conj_a * unitary.adjoint();
}

double check_covariance(const CovariantSystem& sys, const Matrix& a,
                        const SkewMatrix& q, const SymmetryOp& v,
                        const RealMatrix& m) {
  // Intertwining precondition V U(x) V^{-1} = U(M x) on spectral points.
  for (const auto& x : sys.points()) {
    const Matrix lhs = v.conjugate_op(sys, sys.translate(x));
    const Matrix rhs = sys.translate(m * x);
    if (op_norm(lhs - rhs) > 1e-10)
      throw std::invalid_argument(
          "check_covariance: V does not intertwine U(x) with U(Mx)");
  }
  const double sigma = v.antiunitary ? -1.0 : 1.0;
  const RealMatrix mqmt = sigma * m * q.q * q.form.form_transpose(m);
  const Matrix lhs = v.conjugate_op(sys, warp_exact(sys, a, q));
  const Matrix rhs =
      warp_exact(sys, v.conjugate_op(sys, a), SkewMatrix{mqmt, q.form});
  return op_norm(lhs - rhs);
}

CommutationCheck check_commutation(const CovariantSystem& sys, const Matrix& a,
                                   const Matrix& b, const SkewMatrix& q) {
  CommutationCheck out{0.0, 0.0};
  for (const auto& xj : sys.points())
    for (const auto& xk : sys.points()) {
      const Matrix aa = sys.alpha(q.q * xj, a);
      const Matrix bb = sys.alpha(Vector(-q.q * xk), b);
      out.hypothesis_residual =
          std::max(out.hypothesis_residual, op_norm(aa * bb - bb * aa));
    }
  const Matrix aq = warp_exact(sys, a, q);
  const Matrix bq = warp_exact(sys, b, scaled(q, -1.0));
  out.conclusion_residual = op_norm(aq * bq - bq * aq);
  return out;
}

double check_group_law(const CovariantSystem& sys, const Matrix& a,
                       const SkewMatrix& q1, const SkewMatrix& q2) {
  const Matrix twice = warp_exact(sys, warp_exact(sys, a, q1), q2);
  const Matrix once = warp_exact(sys, a, SkewMatrix{q1.q + q2.q, q1.form});
  return op_norm(twice - once);
}

InjectivityReport check_injectivity(const CovariantSystem& sys,
                                    const SkewMatrix& q, std::uint64_t seed) {
  const int d = sys.dim();
  InjectivityReport out{0.0, 0.0, std::numeric_limits<double>::infinity()};

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix ra(d, d), rb(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ra(i, j) = Complex(g(rng), g(rng));
      rb(i, j) = Complex(g(rng), g(rng));
    }
  const Complex ca(0.7, -0.2), cb(-1.3, 0.4);
  out.linearity_residual =
      op_norm(warp_exact(sys, ca * ra + cb * rb, q) -
              ca * warp_exact(sys, ra, q) - cb * warp_exact(sys, rb, q));

  const SkewMatrix minus = scaled(q, -1.0);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      Matrix unit = Matrix::Zero(d, d);
      unit(r, c) = 1.0;
      unit = sys.from_eigenbasis(unit);
      const Matrix warped = warp_exact(sys, unit, q);
      out.round_trip_residual = std::max(
          out.round_trip_residual, op_norm(warp_exact(sys, warped, minus) - unit));
      out.min_basis_norm = std::min(out.min_basis_norm, op_norm(warped));
    }
  return out;
}

}  // namespace warpcore::warp
