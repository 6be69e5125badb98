#include "warpcore/fock.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "warpcore/warp.hpp"

namespace warpcore::fock {

namespace {

void enumerate(int modes, int remaining, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == modes) {
    out.push_back(current);
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    current.push_back(n);
    enumerate(modes, remaining - n, current, out);
    current.pop_back();
  }
}

CovariantSystem make_system(const std::vector<Matrix>& momentum,
                            const CVector& vacuum) {
  return CovariantSystem::build(momentum, minkowski::BilinearForm::lorentz(2),
                                vacuum);
}

}  // namespace

FockModel::FockModel(double mass, std::vector<double> rapidities, int cutoff,
                     int dim_cap)
    : mass_(mass), rapidities_(std::move(rapidities)), cutoff_(cutoff) {
  if (mass_ <= 0.0) throw std::invalid_argument("FockModel: mass must be > 0");
  if (rapidities_.empty() || cutoff_ < 1)
    throw std::invalid_argument("FockModel: need modes and cutoff >= 1");
  const int m = modes();

  std::vector<int> current;
  enumerate(m, cutoff_, current, occupations_);
  dim_ = static_cast<int>(occupations_.size());
  if (dim_ > dim_cap)
    throw std::invalid_argument("FockModel: dimension cap exceeded");

  std::map<std::vector<int>, int> index;
  for (int k = 0; k < dim_; ++k) index[occupations_[k]] = k;

  creation_.assign(m, Matrix::Zero(dim_, dim_));
  annihilation_.assign(m, Matrix::Zero(dim_, dim_));
  for (int k = 0; k < dim_; ++k) {
    const auto& occ = occupations_[k];
    int total = 0;
    for (int n : occ) total += n;
    for (int i = 0; i < m; ++i) {
      if (total < cutoff_) {
        std::vector<int> up = occ;
        up[i] += 1;
        creation_[i](index[up], k) = std::sqrt(static_cast<double>(occ[i] + 1));
      }
      if (occ[i] > 0) {
        std::vector<int> down = occ;
        down[i] -= 1;
        annihilation_[i](index[down], k) =
            std::sqrt(static_cast<double>(occ[i]));
      }
    }
  }

  // Covariant components p_mu = (p^0, -p^1), so that the exported system's
  // spectral points in the pairing convention are the contravariant total
  // momenta themselves.
  momentum_.assign(2, Matrix::Zero(dim_, dim_));
  for (int k = 0; k < dim_; ++k) {
    Vector p = Vector::Zero(2);
    for (int i = 0; i < m; ++i) p += occupations_[k][i] * momentum(rapidities_[i]);
    momentum_[0](k, k) = p(0);
    momentum_[1](k, k) = -p(1);
  }

  vacuum_ = CVector::Zero(dim_);
  vacuum_(index[std::vector<int>(m, 0)]) = 1.0;

  system_ = make_system(momentum_, vacuum_);
}

Vector FockModel::momentum(double theta) const {
  Vector p(2);
  p << mass_ * std::cosh(theta), mass_ * std::sinh(theta);
  return p;
}

Matrix FockModel::sector_projection(int k) const {
  Matrix p = Matrix::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    int total = 0;
    for (int n : occupations_[j]) total += n;
    if (total <= k) p(j, j) = 1.0;
  }
  return p;
}

double FockModel::ccr_residual() const {
  const Matrix proj = sector_projection(cutoff_ - 1);
  double worst = 0.0;
  for (int i = 0; i < modes(); ++i)
    for (int j = 0; j < modes(); ++j) {
      const Matrix comm =
          annihilation_[i] * creation_[j] - creation_[j] * annihilation_[i];
      const double delta = i == j ? 1.0 : 0.0;
      worst = std::max(
          worst,
          op_norm((comm - delta * Matrix::Identity(dim_, dim_)) * proj));
    }
  return worst;
}

Matrix FockModel::field(const CVector& coeff) const {
  if (coeff.size() != modes())
    throw std::invalid_argument("field: one coefficient per mode");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < modes(); ++i)
    out += coeff(i) * creation_[i] + std::conj(coeff(i)) * annihilation_[i];
  return out;
}

Matrix deformed_creation(const FockModel& model, int mode,
                         const SkewMatrix& q) {
  return warp::warp_exact(model.system(), model.creation(mode), q);
}

Complex exchange_phase(const FockModel& model, int mode1, int mode2,
                       const SkewMatrix& q) {
  if (mode1 == mode2)
    throw std::invalid_argument("exchange_phase: rapidities must differ");
  if (model.cutoff() < 2)
    throw std::invalid_argument("exchange_phase: need two-particle sector");
  const Matrix a1 = deformed_creation(model, mode1, q);
  const Matrix a2 = deformed_creation(model, mode2, q);
  const CVector omega = model.vacuum();
  const CVector v =
      model.creation(mode1) * (model.creation(mode2) * omega);
  const Complex num = v.dot(a1 * (a2 * omega));
  const Complex den = v.dot(a2 * (a1 * omega));
  if (std::abs(den) < 1e-14)
    throw std::runtime_error("exchange_phase: vanishing reference amplitude");
  return num / den;
}

WedgeCommutator wedge_commutator_residual(const FockModel& model,
                                          const CVector& f, const CVector& g,
                                          const SkewMatrix& q) {
  const CovariantSystem& sys = model.system();
  const Matrix phi_f = model.field(f);
  const Matrix phi_g = model.field(g);
  WedgeCommutator out{0.0, 0.0};
  for (const auto& xj : sys.points())
    for (const auto& xk : sys.points()) {
      const Matrix a = sys.alpha(q.q * xj, phi_f);
      const Matrix b = sys.alpha(Vector(-q.q * xk), phi_g);
      out.hypothesis_residual =
          std::max(out.hypothesis_residual, op_norm(a * b - b * a));
    }
  const Matrix fq = warp::warp_exact(sys, phi_f, q);
  const Matrix gq = warp::warp_exact(sys, phi_g, SkewMatrix{-q.q, q.form});
  const Matrix proj = model.sector_projection(model.cutoff() - 1);
  out.conclusion_residual = op_norm(proj * (fq * gq - gq * fq) * proj);
  return out;
}

std::vector<ScatteringRow> scattering_table(
    const FockModel& model, const SkewMatrix& q,
    const std::vector<std::pair<int, int>>& mode_pairs) {
  std::vector<ScatteringRow> rows;
  for (const auto& [i, j] : mode_pairs) {
    if (i == j) continue;
    ScatteringRow row;
    row.theta1 = model.rapidities()[i];
    row.theta2 = model.rapidities()[j];
    row.pqp = q.form.pair(model.momentum(row.theta1),
                          q.q * model.momentum(row.theta2));
    row.phase = exchange_phase(model, i, j, q);
    rows.push_back(row);
  }
  return rows;
}

std::string scattering_csv(const std::vector<ScatteringRow>& rows) {
  std::ostringstream os;
  os.precision(15);
  os << "theta1,theta2,pQp,phase_re,phase_im,modulus_defect\n";
  for (const auto& r : rows)
    os << r.theta1 << ',' << r.theta2 << ',' << r.pqp << ','
       << r.phase.real() << ',' << r.phase.imag() << ','
       << std::abs(r.phase) - 1.0 << '\n';
  return os.str();
}

}  // namespace warpcore::fock
