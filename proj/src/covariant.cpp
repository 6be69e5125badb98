#include "warpcore/covariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warpcore::covariant {

namespace {

constexpr double kHermiticityTol = 1e-12;
constexpr double kDegeneracyTol = 1e-10;

}  // namespace

CovariantSystem CovariantSystem::build(std::vector<Matrix> generators,
                                       const BilinearForm& form,
                                       std::optional<CVector> omega) {
  const int n = form.dim();
  if (static_cast<int>(generators.size()) != n)
    throw std::invalid_argument("build_system: need one generator per axis");
  const int d = static_cast<int>(generators[0].rows());
  for (const auto& p : generators) {
    if (p.rows() != d || p.cols() != d)
      throw std::invalid_argument("build_system: generator size mismatch");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol)
      throw std::invalid_argument("build_system: generator not Hermitian");
  }
  for (std::size_t a = 0; a < generators.size(); ++a)
    for (std::size_t b = a + 1; b < generators.size(); ++b) {
      const Matrix comm = generators[a] * generators[b] - generators[b] * generators[a];
      if (op_norm(comm) > kHermiticityTol * std::max(1.0, op_norm(generators[a]) * op_norm(generators[b])))
        throw std::invalid_argument("build_system: generators do not commute");
    }
  if (omega) {
    if (omega->size() != d || std::abs(omega->norm() - 1.0) > 1e-10)
      throw std::invalid_argument("build_system: omega must be a unit vector in C^d");
  }

  CovariantSystem sys(form);
  sys.d_ = d;
  sys.generators_ = std::move(generators);
  sys.omega_ = std::move(omega);

  // Joint diagonalization by per-block refinement: diagonalize each
  // generator restricted to the current degenerate blocks in turn.
  Matrix basis = Matrix::Identity(d, d);
  std::vector<std::pair<int, int>> blocks{{0, d}};  // [begin, end)
  RealMatrix eigvals = RealMatrix::Zero(d, n);      // column k of basis -> tuple

  for (int mu = 0; mu < n; ++mu) {
    std::vector<std::pair<int, int>> next;
    for (auto [b, e] : blocks) {
      const int w = e - b;
      const Matrix sub =
          basis.middleCols(b, w).adjoint() * sys.generators_[mu] * basis.middleCols(b, w);
      Eigen::SelfAdjointEigenSolver<Matrix> es((sub + sub.adjoint()) / 2.0);
      basis.middleCols(b, w) = basis.middleCols(b, w) * es.eigenvectors();
      for (int k = 0; k < w; ++k) eigvals(b + k, mu) = es.eigenvalues()(k);
      // split by eigenvalue within the block
      int start = b;
      for (int k = 1; k < w; ++k) {
        if (es.eigenvalues()(k) - es.eigenvalues()(k - 1) > kDegeneracyTol) {
          next.emplace_back(start, b + k);
          start = b + k;
        }
      }
      next.emplace_back(start, e);
    }
    blocks = std::move(next);
  }
  sys.eigenbasis_ = basis;

  // Merge columns with coinciding joint tuples into distinct spectral points.
  sys.column_point_.assign(d, -1);
  for (int k = 0; k < d; ++k) {
    const Vector tuple = eigvals.row(k).transpose();
    int found = -1;
    for (std::size_t j = 0; j < sys.euclid_points_.size(); ++j) {
      if ((sys.euclid_points_[j] - tuple).cwiseAbs().maxCoeff() <= kDegeneracyTol) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(sys.euclid_points_.size());
      sys.euclid_points_.push_back(tuple);
      sys.points_.push_back(form.gram() * tuple);
    }
    sys.column_point_[k] = found;
  }
  return sys;
}

std::vector<Matrix> CovariantSystem::projections() const {
  std::vector<Matrix> out(points_.size(), Matrix::Zero(d_, d_));
  for (int k = 0; k < d_; ++k) {
    const CVector v = eigenbasis_.col(k);
    out[column_point_[k]] += v * v.adjoint();
  }
  return out;
}

bool CovariantSystem::has_invariant_omega() const {
  if (!omega_) return false;
  for (const auto& p : generators_)
    if ((p * *omega_).norm() > 1e-10) return false;
  return true;
}

Matrix CovariantSystem::translate(const Vector& x) const {
  if (x.size() != form_.dim())
    throw std::invalid_argument("translate: dimension mismatch");
  CVector phases(d_);
  for (int k = 0; k < d_; ++k) {
    // pairing convention: x_j x = (euclid tuple) . x
    const double phi = euclid_points_[column_point_[k]].dot(x);
    phases(k) = std::exp(I * phi);
  }
  return eigenbasis_ * phases.asDiagonal() * eigenbasis_.adjoint();
}

Matrix CovariantSystem::alpha(const Vector& x, const Matrix& a) const {
  const Matrix u = translate(x);
  return u * a * u.adjoint();
}

Matrix CovariantSystem::to_eigenbasis(const Matrix& a) const {
  return eigenbasis_.adjoint() * a * eigenbasis_;
}

Matrix CovariantSystem::from_eigenbasis(const Matrix& a) const {
  return eigenbasis_ * a * eigenbasis_.adjoint();
}

std::vector<BohrComponent> CovariantSystem::bohr_decompose(const Matrix& a) const {
  const Matrix at = to_eigenbasis(a);
  std::vector<BohrComponent> out;
  for (int r = 0; r < d_; ++r)
    for (int c = 0; c < d_; ++c) {
      if (at(r, c) == Complex(0.0, 0.0)) continue;
      const Vector q = points_[column_point_[r]] - points_[column_point_[c]];
      int idx = -1;
      for (std::size_t j = 0; j < out.size(); ++j)
        if ((out[j].character - q).cwiseAbs().maxCoeff() <= kDegeneracyTol) {
          idx = static_cast<int>(j);
          break;
        }
      if (idx < 0) {
        idx = static_cast<int>(out.size());
        out.push_back({q, Matrix::Zero(d_, d_)});
      }
      out[idx].component(r, c) = at(r, c);
    }
  for (auto& comp : out) comp.component = from_eigenbasis(comp.component);
  return out;
}

CovariantSystem::SpectrumReport CovariantSystem::spectrum_report() const {
  SpectrumReport report;
  report.points = points_;
  report.euclid_points = euclid_points_;
  for (const auto& p : euclid_points_) {
    report.in_cone.push_back(minkowski::in_forward_cone(p, false));
    report.interior.push_back(minkowski::in_forward_cone(p, true));
  }
  report.has_invariant_vector = has_invariant_omega();
  return report;
}

}  // namespace warpcore::covariant
