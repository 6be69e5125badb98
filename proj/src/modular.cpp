#include "warpcore/modular.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "warpcore/warp.hpp"

namespace warpcore::modular {

namespace {

constexpr double kSpanTol = 1e-10;

CVector vec_of(const Matrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

Matrix unvec(const CVector& v, int d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix stack_columns(const std::vector<Matrix>& mats) {
  if (mats.empty()) return {};
  Matrix out(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) out.col(i) = vec_of(mats[i]);
  return out;
}

// Hermitian square root / inverse square root / log helpers.
Matrix hermitian_power(const Matrix& h, double p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
  CVector vals(es.eigenvalues().size());
  for (int i = 0; i < vals.size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam <= 0.0)
      throw std::runtime_error("hermitian_power: matrix not positive definite");
    vals(i) = std::pow(lam, p);
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

namespace span {

std::vector<Matrix> orthonormalize(const std::vector<Matrix>& mats) {
  // Modified Gram-Schmidt on normalized candidates with an absolute
  // acceptance threshold.  (A single SVD over the raw stack is unstable
  // here: closure iterations feed in power sequences whose stacked matrix
  // is Vandermonde-conditioned, and near-threshold singular directions
  // then leak numerical noise into the basis.)
  if (mats.empty()) return {};
  const int d = static_cast<int>(mats[0].rows());
  constexpr double kAccept = 1e-8;
  std::vector<CVector> basis;
  for (const auto& m : mats) {
    CVector v = vec_of(m);
    const double nv = v.norm();
    if (nv < 1e-14) continue;
    v /= nv;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > kAccept) {
      v.normalize();
      basis.push_back(std::move(v));
    }
  }
  std::vector<Matrix> out;
  for (const auto& b : basis) out.push_back(unvec(b, d));
  return out;
}

double inclusion_residual(const std::vector<Matrix>& inner,
                          const std::vector<Matrix>& outer) {
  if (inner.empty()) return 0.0;
  const std::vector<Matrix> ob = orthonormalize(outer);
  const Matrix b = stack_columns(ob);
  double worst = 0.0;
  for (const auto& m : inner) {
    const CVector v = vec_of(m);
    const double nv = v.norm();
    if (nv < 1e-14) continue;
    const CVector res = b.size() ? CVector(v - b * (b.adjoint() * v)) : v;
    worst = std::max(worst, res.norm() / nv);
  }
  return worst;
}

double equality_residual(const std::vector<Matrix>& a,
                         const std::vector<Matrix>& b) {
  return std::max(inclusion_residual(a, b), inclusion_residual(b, a));
}

}  // namespace span

AlgebraSpec AlgebraSpec::generate(std::vector<Matrix> gens) {
  if (gens.empty()) throw std::invalid_argument("generate: no generators");
  const int d = static_cast<int>(gens[0].rows());
  for (const auto& g : gens)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("generate: size mismatch");

  AlgebraSpec spec;
  spec.d = d;
  spec.generators = gens;

  std::vector<Matrix> work{Matrix::Identity(d, d)};
  for (const auto& g : gens) {
    work.push_back(g);
    work.push_back(g.adjoint());
  }
  std::vector<Matrix> basis = span::orthonormalize(work);
  const int cap = d * d;
  for (;;) {
    std::vector<Matrix> extended = basis;
    for (const auto& a : basis)
      for (const auto& b : basis) extended.push_back(a * b);
    std::vector<Matrix> next = span::orthonormalize(extended);
    if (next.size() == basis.size() || static_cast<int>(next.size()) >= cap) {
      basis = std::move(next);
      if (static_cast<int>(basis.size()) >= cap) {
        // full matrix algebra; one more pass is a no-op
      }
      break;
    }
    basis = std::move(next);
  }
  spec.basis = std::move(basis);
  return spec;
}

double AlgebraSpec::closure_residual() const {
  std::vector<Matrix> products;
  for (const auto& a : basis) {
    products.push_back(a.adjoint());
    for (const auto& b : basis) products.push_back(a * b);
  }
  return span::inclusion_residual(products, basis);
}

AlgebraSpec commutant(const AlgebraSpec& spec) {
  const int d = spec.d;
  const std::vector<Matrix>& gens =
      spec.generators.empty() ? spec.basis : spec.generators;
  // Null space of the stacked commutator constraints, through the normal
  // matrix: the spectral gap between exact zeros and the smallest genuine
  // singular value is many orders, so no precision is lost.
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  Matrix h = Matrix::Zero(dd, dd);
  const Matrix id = Matrix::Identity(d, d);
  for (const auto& g : gens)
    for (const Matrix& a : {g, Matrix(g.adjoint())}) {
      const Matrix c = kron(id, a) - kron(a.transpose(), id);
      h.noalias() += c.adjoint() * c;
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) / 2.0);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  AlgebraSpec out;
  out.d = d;
  for (Eigen::Index k = 0; k < dd; ++k)
    if (es.eigenvalues()(k) <= 1e-12 * scale)
      out.basis.push_back(unvec(es.eigenvectors().col(k), d));
  out.generators = out.basis;
  return out;
}

CyclicSeparating cyclic_separating(const AlgebraSpec& spec,
                                   const CVector& omega) {
  const int d = spec.d;
  auto rank_of = [&](const AlgebraSpec& s) {
    Matrix m(d, static_cast<Eigen::Index>(s.basis.size()));
    for (std::size_t i = 0; i < s.basis.size(); ++i)
      m.col(i) = s.basis[i] * omega;
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double thresh = kSpanTol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    int r = 0;
    while (r < sv.size() && sv(r) > thresh) ++r;
    return r;
  };
  CyclicSeparating out;
  out.cyclic = rank_of(spec) == d;
  out.separating = rank_of(commutant(spec)) == d;
  return out;
}

Matrix ModularData::conj_by_j(const Matrix& a) const {
  return j_lin * a.conjugate() * j_lin.conjugate();
}

Matrix ModularData::delta_it(double t) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es((delta + delta.adjoint()) / 2.0);
  CVector vals(es.eigenvalues().size());
  for (int i = 0; i < vals.size(); ++i)
    vals(i) = std::exp(I * (t * std::log(es.eigenvalues()(i))));
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

ModularData::SelfCheck ModularData::self_check(const AlgebraSpec& spec,
                                               const CVector& omega) const {
  SelfCheck out{};
  const Matrix sqrt_delta = hermitian_power(delta, 0.5);
  out.polar_residual = op_norm(s_lin - j_lin * sqrt_delta.conjugate());
  out.j_involution =
      op_norm(j_lin * j_lin.conjugate() - Matrix::Identity(j_lin.rows(), j_lin.cols()));
  out.j_delta_j =
      op_norm(conj_by_j(delta) - hermitian_power(delta, -1.0));
  out.s_action = 0.0;
  out.s_involution = 0.0;
  for (const auto& a : spec.basis) {
    const CVector av = a * omega;
    out.s_action = std::max(out.s_action, (apply_s(av) - a.adjoint() * omega).norm());
    out.s_involution =
        std::max(out.s_involution, (apply_s(apply_s(av)) - av).norm());
  }
  out.flow_invariance = 0.0;
  for (double t : {0.37, 1.0, -0.71}) {
    const Matrix u = delta_it(t);
    std::vector<Matrix> flowed;
    for (const auto& a : spec.basis) flowed.push_back(u * a * u.adjoint());
    out.flow_invariance =
        std::max(out.flow_invariance, span::equality_residual(flowed, spec.basis));
  }
  std::vector<Matrix> jrj;
  for (const auto& a : spec.basis) jrj.push_back(conj_by_j(a));
  out.j_commutant = span::equality_residual(jrj, commutant(spec).basis);
  return out;
}

ModularData tomita(const AlgebraSpec& spec, const CVector& omega,
                   bool verify_preconditions) {
  if (verify_preconditions) {
    const auto cs = cyclic_separating(spec, omega);
    if (!cs.cyclic || !cs.separating)
      throw std::invalid_argument("tomita: Omega must be cyclic and separating");
  }
  const int d = spec.d;
  Matrix v(d, static_cast<Eigen::Index>(spec.basis.size()));
  Matrix w(d, static_cast<Eigen::Index>(spec.basis.size()));
  for (std::size_t i = 0; i < spec.basis.size(); ++i) {
    v.col(i) = spec.basis[i] * omega;
    w.col(i) = spec.basis[i].adjoint() * omega;
  }
  // S (A Omega) = A* Omega: solve S_lin conj(V) = W in least squares; the
  // system is consistent and determines S_lin uniquely since V has rank d.
  ModularData md;
  const Matrix vc = v.conjugate();
  md.s_lin = w * vc.completeOrthogonalDecomposition().pseudoInverse();
  md.delta = md.s_lin.transpose() * md.s_lin.conjugate();
  md.delta = (md.delta + md.delta.adjoint()) / 2.0;
  md.j_lin = md.s_lin * hermitian_power(md.delta, -0.5).conjugate();
  return md;
}

AlgebraSpec warp_algebra(const CovariantSystem& sys, const AlgebraSpec& spec,
                         const SkewMatrix& q) {
  std::vector<Matrix> warped;
  const auto& gens = spec.generators.empty() ? spec.basis : spec.generators;
  for (const auto& g : gens) warped.push_back(warp::warp_exact(sys, g, q));
  return AlgebraSpec::generate(std::move(warped));
}

namespace {

std::string precondition_failure(const CovariantSystem& sys,
                                 const AlgebraSpec& spec, const CVector& omega,
                                 const AlgebraSpec& warped) {
  for (const auto& p : sys.generators())
    if ((p * omega).norm() > 1e-10) return "Omega not translation invariant";
  const auto cs = cyclic_separating(spec, omega);
  if (!cs.cyclic) return "Omega not cyclic for R";
  if (!cs.separating) return "Omega not separating for R";
  const auto csq = cyclic_separating(warped, omega);
  if (!csq.cyclic) return "Omega not cyclic for R_Q";
  if (!csq.separating) return "Omega not separating for R_Q";
  return {};
}

}  // namespace

ModularInvarianceReport check_modular_invariance(const CovariantSystem& sys,
                                                 const AlgebraSpec& spec,
                                                 const CVector& omega,
                                                 const SkewMatrix& q) {
  ModularInvarianceReport out;
  const AlgebraSpec warped = warp_algebra(sys, spec, q);
  out.skip_reason = precondition_failure(sys, spec, omega, warped);
  if (!out.skip_reason.empty()) return out;
  out.applicable = true;
  const ModularData md = tomita(spec, omega, false);
  const ModularData mdq = tomita(warped, omega, false);
  out.delta_residual = op_norm(mdq.delta - md.delta) / op_norm(md.delta);
  out.j_residual = op_norm(mdq.j_lin - md.j_lin);
  return out;
}

DualityReport check_commutant_duality(const CovariantSystem& sys,
                                      const AlgebraSpec& spec,
                                      const CVector& omega,
                                      const SkewMatrix& q) {
  DualityReport out;
  const AlgebraSpec warped = warp_algebra(sys, spec, q);
  out.skip_reason = precondition_failure(sys, spec, omega, warped);
  if (!out.skip_reason.empty()) return out;
  out.applicable = true;
  const AlgebraSpec lhs = commutant(warped);
  const AlgebraSpec rhs =
      warp_algebra(sys, commutant(spec), SkewMatrix{-q.q, q.form});
  out.residual = span::equality_residual(lhs.basis, rhs.basis);
  return out;
}

BorchersReport borchers_report(const CovariantSystem& sys,
                               const AlgebraSpec& spec, const CVector& omega,
                               const Wedge& wedge, int samples,
                               std::uint64_t seed) {
  BorchersReport out;
  const auto sr = sys.spectrum_report();
  out.spectrum_in_cone = true;
  for (bool b : sr.in_cone) out.spectrum_in_cone = out.spectrum_in_cone && b;
  out.omega_invariance = 0.0;
  for (const auto& p : sys.generators())
    out.omega_invariance = std::max(out.omega_invariance, (p * omega).norm());
  const auto cs = cyclic_separating(spec, omega);
  out.cyclic = cs.cyclic;
  out.separating = cs.separating;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.5);
  const int n = sys.spacetime_dim();
  double forward = 0.0, backward = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vector x = Vector::Zero(n);
    x(0) = uni(rng);
    x(1) = std::abs(x(0)) + pos(rng);
    for (int mu = 2; mu < n; ++mu) x(mu) = uni(rng);
    x = wedge.carrier.lorentz * x;  // direction only; translations irrelevant
    std::vector<Matrix> moved;
    for (const auto& a : spec.basis) moved.push_back(sys.alpha(x, a));
    forward = std::max(forward, span::inclusion_residual(moved, spec.basis));
    backward = std::max(backward, span::inclusion_residual(spec.basis, moved));
  }
  out.half_sided_residual = forward;
  out.inclusion_is_equality = forward <= kSpanTol && backward <= kSpanTol;
  return out;
}

namespace {

std::vector<Matrix> conjugated_basis(const CovariantSystem& sys,
                                     const AlgebraSpec& spec,
                                     const RepresentedElement& el) {
  warp::SymmetryOp op{el.op, el.antiunitary};
  std::vector<Matrix> out;
  for (const auto& a : spec.basis) out.push_back(op.conjugate_op(sys, a));
  return out;
}

}  // namespace

WedgeNetAudit wedge_net(const CovariantSystem& sys, const AlgebraSpec& spec,
                        const std::vector<RepresentedElement>& elements,
                        int geometry_samples, std::uint64_t seed) {
  const int n = sys.spacetime_dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(1e-3, 2.0);
  std::vector<Vector> cloud;  // deterministic points inside the reference wedge
  for (int s = 0; s < geometry_samples; ++s) {
    Vector x = Vector::Zero(n);
    x(0) = uni(rng);
    x(1) = std::abs(x(0)) + pos(rng);
    for (int mu = 2; mu < n; ++mu) x(mu) = 3.0 * uni(rng);
    cloud.push_back(x);
  }

  std::vector<std::vector<Matrix>> algebras;
  for (const auto& el : elements)
    algebras.push_back(conjugated_basis(sys, spec, el));

  WedgeNetAudit audit;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (i == j) continue;
      WedgeNetAudit::Pair pair;
      pair.i = static_cast<int>(i);
      pair.j = static_cast<int>(j);
      const minkowski::Wedge wi{elements[i].lambda, false};
      const minkowski::Wedge wj{elements[j].lambda, false};
      const minkowski::Wedge wjc{elements[j].lambda, true};
      pair.geometric_inclusion = true;
      pair.geometric_causal = true;
      for (const auto& x : cloud) {
        const Vector y = elements[i].lambda.apply(x);
        pair.geometric_inclusion = pair.geometric_inclusion && wj.contains(y);
        pair.geometric_causal = pair.geometric_causal && wjc.contains(y);
      }
      if (pair.geometric_inclusion) {
        pair.algebra_inclusion_residual =
            span::inclusion_residual(algebras[i], algebras[j]);
        audit.worst_isotony =
            std::max(audit.worst_isotony, pair.algebra_inclusion_residual);
      }
      if (pair.geometric_causal) {
        double worst = 0.0;
        for (const auto& a : algebras[i])
          for (const auto& b : algebras[j])
            worst = std::max(worst, op_norm(a * b - b * a));
        pair.commutation_residual = worst;
        audit.worst_causality = std::max(audit.worst_causality, worst);
      }
      audit.pairs.push_back(std::move(pair));
    }
  return audit;
}

MaximalCausalityReport check_maximal_causality(const CovariantSystem& sys,
                                               const AlgebraSpec& spec,
                                               const RepresentedElement& flip,
                                               const SkewMatrix& q) {
  MaximalCausalityReport out;
  out.undeformed_residual = span::equality_residual(
      conjugated_basis(sys, spec, flip), commutant(spec).basis);
  const AlgebraSpec warped = warp_algebra(sys, spec, q);
  out.deformed_residual = span::equality_residual(
      conjugated_basis(sys, warped, flip), commutant(warped).basis);
  return out;
}

EquivalenceReport check_equivalence(const CovariantSystem& sys_a,
                                    const AlgebraSpec& spec_a,
                                    const CVector& omega_a,
                                    const CovariantSystem& sys_b,
                                    const AlgebraSpec& spec_b,
                                    const CVector& omega_b) {
  if (sys_a.dim() != sys_b.dim() ||
      sys_a.spacetime_dim() != sys_b.spacetime_dim())
    throw std::invalid_argument("check_equivalence: dimension mismatch");
  const int d = sys_a.dim();
  const int n = sys_a.spacetime_dim();
  const Matrix id = Matrix::Identity(d, d);

  // Linear system on vec(V): V P_{A,mu} = P_{B,mu} V and V Omega_A = Omega_B.
  // When the two algebras are presented with generator lists of equal
  // length, also impose the generator matching V g_i = g'_i V -- a
  // heuristic that pins down V on degenerate translation eigenspaces; the
  // verdict below only ever trusts the verified residuals.
  std::vector<std::pair<Matrix, Matrix>> matched;
  for (int mu = 0; mu < n; ++mu)
    matched.emplace_back(sys_a.generators()[mu], sys_b.generators()[mu]);
  if (spec_a.generators.size() == spec_b.generators.size())
    for (std::size_t i = 0; i < spec_a.generators.size(); ++i)
      matched.emplace_back(spec_a.generators[i], spec_b.generators[i]);

  Matrix lhs(static_cast<Eigen::Index>(matched.size()) * d * d + d, d * d);
  CVector rhs = CVector::Zero(lhs.rows());
  for (std::size_t i = 0; i < matched.size(); ++i)
    lhs.middleRows(static_cast<Eigen::Index>(i) * d * d, d * d) =
        kron(id, matched[i].second) - kron(matched[i].first.transpose(), id);
  lhs.bottomRows(d) = kron(omega_a.transpose(), id);
  rhs.tail(d) = omega_b;

  const CVector sol = lhs.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  EquivalenceReport out;
  Matrix v = unvec(sol, d);
  if (v.norm() < 1e-8) return out;  // no usable solution

  // Project the least-squares solution onto the unitary group and test.
  Eigen::BDCSVD<Matrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  v = svd.matrixU() * svd.matrixV().adjoint();
  out.intertwiner = v;
  out.unitarity_residual = op_norm(v.adjoint() * v - id);
  out.omega_residual = (v * omega_a - omega_b).norm();
  out.generator_residual = 0.0;
  for (int mu = 0; mu < n; ++mu)
    out.generator_residual = std::max(
        out.generator_residual,
        op_norm(v * sys_a.generators()[mu] - sys_b.generators()[mu] * v));
  std::vector<Matrix> moved;
  for (const auto& a : spec_a.basis) moved.push_back(v * a * v.adjoint());
  out.algebra_residual = span::equality_residual(moved, spec_b.basis);
  out.found = out.unitarity_residual <= 1e-8 && out.omega_residual <= 1e-8 &&
              out.generator_residual <= 1e-8 && out.algebra_residual <= 1e-8;
  return out;
}

}  // namespace warpcore::modular
