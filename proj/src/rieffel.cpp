#include "warpcore/rieffel.hpp"

#include <cmath>
#include <stdexcept>

#include "warpcore/warp.hpp"

namespace warpcore::rieffel {

double MollifierSpec::width_x(int axis) const {
  if (family == Family::Gaussian) return width;
  return width * (1.0 + 0.5 * axis);
}

double MollifierSpec::width_y(int axis) const {
  if (family == Family::Gaussian) return width;
  return width * (1.0 + 0.25 * (axis + 1));
}

void MollifierSpec::validate() const {
  if (width <= 0.0) throw std::invalid_argument("mollifier width must be > 0");
  if (eps_schedule.empty())
    throw std::invalid_argument("empty epsilon schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (eps_schedule[i] <= 0.0)
      throw std::invalid_argument("epsilon schedule must be positive");
    if (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])
      throw std::invalid_argument("epsilon schedule must be strictly decreasing");
  }
}

void QuadratureGrid::validate(double min_eps) const {
  if (min_eps <= 0.0) throw std::invalid_argument("invalid epsilon");
  if (radius_factor < 3.0)
    throw std::invalid_argument("grid radius must cover at least 3/eps");
  if (window_factor < 6.0)
    throw std::invalid_argument("stationary window too narrow");
}

namespace detail {

Complex oscillatory_factor(double a, double b, double s, double sx, double sy,
                           const QuadratureGrid& grid) {
  // Inner integral J(w) = \int dy exp(-y^2/(2 sy^2) + i w y), trapezoid.
  // Only |w| <= window_factor/sy contributes to the outer integral, so the
  // node spacing has to resolve frequencies up to that plus the Gaussian
  // bandwidth ~1/sy.
  const double ry = grid.radius_factor * sy;
  double hy = 2.0 * M_PI * sy / (grid.window_factor + 14.0);
  int ky = std::max(grid.min_inner_nodes / 2,
                    static_cast<int>(std::ceil(ry / hy)));
  hy = ry / ky;

  auto inner = [&](double w) {
    double re = 0.0, im = 0.0;
    for (int k = -ky; k <= ky; ++k) {
      const double y = k * hy;
      const double env = std::exp(-y * y / (2.0 * sy * sy));
      re += env * std::cos(w * y);
      im += env * std::sin(w * y);
    }
    return Complex(re * hy, im * hy);
  };

  // Outer integral over the stationary window around x0 = -s b, where the
  // inner Gaussian J(b + s x) has its mass (width 1/sy in x).
  const double x0 = -s * b;
  const double window = grid.window_factor / sy;
  const double rx = grid.radius_factor * sx;
  const double lo = std::max(x0 - window, -rx);
  const double hi = std::min(x0 + window, rx);
  if (lo >= hi) return Complex(0.0, 0.0);

  double hx = std::min(1.0 / (6.0 * sy), 2.0 * M_PI / (4.0 * (std::abs(a) + 1.0)));
  int nx = std::max(grid.min_outer_nodes,
                    static_cast<int>(std::ceil((hi - lo) / hx)));
  hx = (hi - lo) / nx;

  Complex sum(0.0, 0.0);
  for (int k = 0; k <= nx; ++k) {
    const double x = lo + k * hx;
    const double weight = (k == 0 || k == nx) ? 0.5 : 1.0;
    const double env = std::exp(-x * x / (2.0 * sx * sx));
    const Complex osc(std::cos(a * x), std::sin(a * x));
    sum += weight * env * osc * inner(b + s * x);
  }
  return sum * hx / (2.0 * M_PI);
}

Complex oscillatory_factor_closed_form(double a, double b, double s, double sx,
                                       double sy) {
  const double A = 1.0 / (2.0 * sx * sx) + sy * sy / 2.0;
  const Complex B(-s * b * sy * sy, a);
  const Complex expo = B * B / (4.0 * A) - b * b * sy * sy / 2.0;
  return sy / std::sqrt(2.0 * A) * std::exp(expo);
}

Complex phase_integral(const CovariantSystem& sys, const Vector& u,
                       const Vector& v, double eps, const MollifierSpec& moll,
                       const QuadratureGrid& grid) {
  const auto& form = sys.form();
  const int n = form.dim();
  const Vector ua = form.gram() * u;  // Euclidean frequency coefficients
  const Vector va = form.gram() * v;
  Complex result(1.0, 0.0);
  for (int mu = 0; mu < n; ++mu) {
    const double s = -form.gram()(mu, mu);  // sign of the x y cross term
    const double sx = moll.width_x(mu) / eps;
    const double sy = moll.width_y(mu) / eps;
    result *= oscillatory_factor(ua(mu), va(mu), s, sx, sy, grid);
  }
  return result;
}

QuadratureResult extrapolate(const std::vector<double>& eps_schedule,
                             const std::vector<Matrix>& values) {
  const std::size_t m = values.size();
  QuadratureResult out;
  for (std::size_t i = 0; i < m; ++i) {
    out.table.push_back(
        {eps_schedule[i], op_norm(values[i]),
         i == 0 ? 0.0 : op_norm(values[i] - values[i - 1])});
  }
  out.converged = true;
  for (std::size_t i = 2; i < m; ++i)
    if (out.table[i].increment >= out.table[i - 1].increment)
      out.converged = false;

  // Neville tableau in h = eps^2: the regularization error is an even
  // power series in eps.
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = eps_schedule[i] * eps_schedule[i];
  std::vector<Matrix> tab = values;
  Matrix previous = tab.back();
  for (std::size_t j = 1; j < m; ++j) {
    if (j == m - 1) previous = tab[m - 1];
    for (std::size_t i = m - 1; i >= j; --i)
      tab[i] = (h[i - j] * tab[i] - h[i] * tab[i - 1]) / (h[i - j] - h[i]);
  }
  out.value = tab[m - 1];
  out.error_estimate =
      m > 1 ? op_norm(tab[m - 1] - previous) : op_norm(tab[0]) * 1e-2;
  return out;
}

}  // namespace detail

namespace {

// Pairing table W(r, c) = pair(x_r, Q x_c) over eigenbasis columns.
RealMatrix phase_table(const CovariantSystem& sys, const SkewMatrix& q) {
  const int d = sys.dim();
  RealMatrix w(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      w(r, c) = sys.form().pair(sys.point_of_column(r),
                                q.q * sys.point_of_column(c));
  return w;
}

void require_skew(const SkewMatrix& q) {
  if (q.skewness_residual() > 1e-10)
    throw std::invalid_argument("Q is not skew w.r.t. the bilinear form");
}

}  // namespace

Matrix product_exact(const CovariantSystem& sys, const Matrix& a,
                     const Matrix& b, const SkewMatrix& q) {
  require_skew(q);
  const int d = sys.dim();
  const Matrix at = sys.to_eigenbasis(a);
  const Matrix bt = sys.to_eigenbasis(b);
  const RealMatrix w = phase_table(sys, q);
  Matrix out = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Complex acc(0.0, 0.0);
      for (int m = 0; m < d; ++m) {
        // (x_k - x_m) Q (x_m - x_l) with x Q x = 0
        const double phi = w(k, m) - w(k, l) + w(m, l);
        acc += std::exp(I * phi) * at(k, m) * bt(m, l);
      }
      out(k, l) = acc;
    }
  return sys.from_eigenbasis(out);
}

QuadratureResult product_quadrature(const CovariantSystem& sys, const Matrix& a,
                                    const Matrix& b, const SkewMatrix& q,
                                    const MollifierSpec& moll,
                                    const QuadratureGrid& grid) {
  require_skew(q);
  moll.validate();
  grid.validate(moll.eps_schedule.back());
  const int d = sys.dim();
  const Matrix at = sys.to_eigenbasis(a);
  const Matrix bt = sys.to_eigenbasis(b);
  const RealMatrix qt = sys.form().form_transpose(q.q);

  std::vector<Matrix> values;
  for (double eps : moll.eps_schedule) {
    Matrix val = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        Complex acc(0.0, 0.0);
        for (int m = 0; m < d; ++m) {
          if (at(k, m) == Complex(0.0) || bt(m, l) == Complex(0.0)) continue;
          const Vector u =
              qt * (sys.point_of_column(k) - sys.point_of_column(m));
          const Vector v = sys.point_of_column(m) - sys.point_of_column(l);
          acc += detail::phase_integral(sys, u, v, eps, moll, grid) *
                 at(k, m) * bt(m, l);
        }
        val(k, l) = acc;
      }
    values.push_back(sys.from_eigenbasis(val));
  }
  return detail::extrapolate(moll.eps_schedule, values);
}

double check_associativity(const CovariantSystem& sys, const Matrix& a,
                           const Matrix& b, const Matrix& c,
                           const SkewMatrix& q) {
  const Matrix left = product_exact(sys, product_exact(sys, a, b, q), c, q);
  const Matrix right = product_exact(sys, a, product_exact(sys, b, c, q), q);
  return op_norm(left - right);
}

double check_star_compat(const CovariantSystem& sys, const Matrix& a,
                         const Matrix& b, const SkewMatrix& q) {
  const Matrix left = product_exact(sys, a, b, q).adjoint();
  const Matrix right = product_exact(sys, b.adjoint(), a.adjoint(), q);
  return op_norm(left - right);
}

double deformed_norm(const CovariantSystem& sys, const Matrix& a,
                     const SkewMatrix& q) {
  return op_norm(warp::warp_exact(sys, a, q));
}

}  // namespace warpcore::rieffel
