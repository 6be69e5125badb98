#include "warpcore/minkowski.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace warpcore::minkowski {

BilinearForm::BilinearForm(int n, FormKind kind) : n_(n), kind_(kind) {
  if (n < 2) throw std::invalid_argument("bilinear form needs dimension >= 2");
  gram_ = RealMatrix::Identity(n, n);
  if (kind == FormKind::Lorentz) {
    for (int i = 1; i < n; ++i) gram_(i, i) = -1.0;
  }
}

double BilinearForm::pair(const Vector& x, const Vector& y) const {
  if (x.size() != n_ || y.size() != n_)
    throw std::invalid_argument("pairing: dimension mismatch");
  return x.dot(gram_ * y);
}

RealMatrix BilinearForm::form_transpose(const RealMatrix& m) const {
  return gram_ * m.transpose() * gram_;
}

bool in_forward_cone(const Vector& p, bool strict) {
  const double spatial = p.tail(p.size() - 1).norm();
  if (strict) return p(0) > spatial && p.norm() > 0.0;
  return p(0) >= spatial;
}

PoincareElement PoincareElement::compose(const PoincareElement& other) const {
  return {translation + lorentz * other.translation, lorentz * other.lorentz,
          orthochronous == other.orthochronous};
}

PoincareElement PoincareElement::inverse() const {
  RealMatrix inv = lorentz.inverse();
  return {-(inv * translation), inv, orthochronous};
}

PoincareElement PoincareElement::identity(int n) {
  return {Vector::Zero(n), RealMatrix::Identity(n, n), true};
}

PoincareElement PoincareElement::translationOf(const Vector& a) {
  const int n = static_cast<int>(a.size());
  return {a, RealMatrix::Identity(n, n), true};
}

PoincareElement boost(double t, int n) {
  RealMatrix L = RealMatrix::Identity(n, n);
  const double c = std::cosh(2.0 * M_PI * t);
  const double s = std::sinh(2.0 * M_PI * t);
  L(0, 0) = c;
  L(0, 1) = s;
  L(1, 0) = s;
  L(1, 1) = c;
  return {Vector::Zero(n), L, true};
}

PoincareElement reflection_j(int n) {
  RealMatrix L = RealMatrix::Identity(n, n);
  L(0, 0) = -1.0;
  L(1, 1) = -1.0;
  return {Vector::Zero(n), L, false};
}

PoincareElement rotation(int n, int axis_a, int axis_b, double phi) {
  if (axis_a < 1 || axis_b < 1 || axis_a >= n || axis_b >= n ||
      axis_a == axis_b)
    throw std::invalid_argument("rotation: invalid spatial plane");
  RealMatrix L = RealMatrix::Identity(n, n);
  L(axis_a, axis_a) = std::cos(phi);
  L(axis_b, axis_b) = std::cos(phi);
  L(axis_a, axis_b) = -std::sin(phi);
  L(axis_b, axis_a) = std::sin(phi);
  return {Vector::Zero(n), L, true};
}

bool Wedge::contains(const Vector& x) const {
  Vector y = carrier.inverse().apply(x);
  if (complement) y = -y;  // W' = -W for the reference wedge
  return y(1) >= std::abs(y(0));
}

double SkewMatrix::skewness_residual() const {
  // pair(x, Qy) = -pair(y, Qx) for all x, y iff G Q is antisymmetric.
  const RealMatrix gq = form.gram() * q;
  return (gq + gq.transpose()).cwiseAbs().maxCoeff();
}

SkewMatrix standard_q(const BilinearForm& form, double zeta,
                      std::optional<double> eta) {
  const int n = form.dim();
  if (zeta < 0.0) throw std::invalid_argument("standard_q: zeta must be >= 0");
  if (eta && n != 4)
    throw std::invalid_argument("standard_q: eta only meaningful for n = 4");
  RealMatrix q = RealMatrix::Zero(n, n);
  q(0, 1) = zeta;
  q(1, 0) = zeta;
  if (eta) {
    q(2, 3) = *eta;
    q(3, 2) = -*eta;
  }
  SkewMatrix result{q, form};
  if (result.skewness_residual() > 1e-12)
    throw std::logic_error("standard_q: skewness violated");
  return result;
}

namespace {

bool is_standard_pattern(const SkewMatrix& q) {
  if (q.form.kind() != FormKind::Lorentz) return false;
  const int n = q.dim();
  RealMatrix rest = q.q;
  if (q.q(0, 1) < 0.0 || std::abs(q.q(0, 1) - q.q(1, 0)) > 1e-14) return false;
  rest(0, 1) = rest(1, 0) = 0.0;
  if (n == 4) {
    if (std::abs(rest(2, 3) + rest(3, 2)) > 1e-14) return false;
    rest(2, 3) = rest(3, 2) = 0.0;
  }
  return rest.cwiseAbs().maxCoeff() <= 1e-14;
}

Vector random_forward_cone_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector p(n);
  for (int i = 1; i < n; ++i) p(i) = u(rng);
  p(0) = p.tail(n - 1).norm() + std::abs(u(rng));
  return p;
}

// Wedge-preserving sample set: boosts, translations into W, transverse
// rotations (n >= 4).
std::vector<PoincareElement> stabilizer_samples(int n, int count,
                                                std::mt19937_64& rng) {
  std::vector<PoincareElement> out;
  // rapidities stay below ~pi so the conjugation residual is dominated by
  // the 1e-12 tolerance rather than cosh^2 rounding amplification
  for (double t : {0.3, -0.3, 0.5, -0.5}) out.push_back(boost(t, n));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ub(-0.5, 0.5);
  while (static_cast<int>(out.size()) < count) {
    const int pick = static_cast<int>(rng() % 3);
    if (pick == 0) {
      out.push_back(boost(ub(rng), n));
    } else if (pick == 1) {
      Vector a(n);
      for (int i = 0; i < n; ++i) a(i) = u(rng);
      a(1) = std::abs(a(0)) + std::abs(a(1));  // into W
      out.push_back(PoincareElement::translationOf(a));
    } else if (n >= 4) {
      out.push_back(rotation(n, 2, 3, M_PI * u(rng)));
    } else {
      out.push_back(boost(ub(rng), n));
    }
  }
  return out;
}

}  // namespace

AdmissibilityReport check_admissible(const SkewMatrix& q, int samples,
                                     std::uint64_t seed) {
  const int n = q.dim();
  const Wedge w = Wedge::reference(n);
  std::mt19937_64 rng(seed);
  AdmissibilityReport report;

  // (i) Q V+ inside W.  For the standard forms this holds in closed form:
  // (Qp)_0 = zeta p1, (Qp)_1 = zeta p0 and zeta p0 >= zeta |p1|.
  if (is_standard_pattern(q)) {
    report.cone_mode = CheckMode::Analytic;
    report.cone_into_wedge = true;
    report.cone_margin = 0.0;
  } else {
    report.cone_mode = CheckMode::Sampled;
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      const Vector p = random_forward_cone_point(rng, n);
      const Vector qp = q.q * p;
      const double margin = qp(1) - std::abs(qp(0));
      worst = std::min(worst, margin);
      if (!w.contains(qp)) ok = false;
    }
    report.cone_into_wedge = ok;
    report.cone_margin = worst;
  }

  // (ii) L Q L^T = Q for wedge-preserving lambda.
  double res2 = 0.0;
  for (const auto& lam : stabilizer_samples(n, samples, rng)) {
    const RealMatrix d =
        lam.lorentz * q.q * q.form.form_transpose(lam.lorentz) - q.q;
    res2 = std::max(res2, d.cwiseAbs().maxCoeff());
  }
  report.stabilizer_residual = res2;
  report.invariant_under_stabilizer = res2 <= 1e-12;

  // (iii) L Q L^T = -Q for wedge-flipping lambda: pi-rotations in a plane
  // containing e1 composed with wedge-preserving elements.  Vacuous for
  // n = 2, where no element of the proper orthochronous group flips W.
  if (n >= 3) {
    double res3 = 0.0;
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < samples; ++i) {
      const int axis = 2 + static_cast<int>(rng() % (n - 2));
      PoincareElement flip = rotation(n, 1, axis, M_PI);
      if (i % 2 == 1) flip = flip.compose(boost(u(rng), n));
      const RealMatrix d =
          flip.lorentz * q.q * q.form.form_transpose(flip.lorentz) + q.q;
      res3 = std::max(res3, d.cwiseAbs().maxCoeff());
    }
    report.flip_residual = res3;
    report.flipped_by_wedge_flip = res3 <= 1e-12;
  } else {
    report.flip_residual = 0.0;
    report.flipped_by_wedge_flip = true;
  }
  return report;
}

WedgeMapClass classify_wedge_map(const PoincareElement& lambda, const Wedge& w,
                                 int samples, std::uint64_t seed) {
  const int n = lambda.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const Wedge wc{w.carrier, !w.complement};
  bool all_in = true, all_out = true;
  for (int i = 0; i < samples; ++i) {
    Vector x(n);
    for (int k = 0; k < n; ++k) x(k) = u(rng);
    x(1) = std::abs(x(0)) + std::abs(x(1));  // reference-wedge cloud
    const Vector y =
        w.complement ? w.carrier.apply(Vector(-x)) : w.carrier.apply(x);
    const Vector image = lambda.apply(y);
    if (!w.contains(image)) all_in = false;
    if (!wc.contains(image)) all_out = false;
  }
  if (all_in) return WedgeMapClass::Preserves;
  if (all_out) return WedgeMapClass::Flips;
  return WedgeMapClass::Neither;
}

SpanReport span_deformation_directions(const SkewMatrix& q,
                                       double neighborhood_radius, int samples,
                                       std::uint64_t seed) {
  const int n = q.dim();
  if (n < 3)
    throw std::invalid_argument("span_deformation_directions: requires n >= 3");
  if (q.q.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("span_deformation_directions: Q must be nonzero");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const RealMatrix G = q.form.gram();

  RealMatrix directions(n * n, samples);
  for (int s = 0; s < samples; ++s) {
    // so(G): A = G K with K antisymmetric; exp(A) is proper orthochronous
    // near the identity.
    RealMatrix k = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = neighborhood_radius * g(rng);
        k(i, j) = v;
        k(j, i) = -v;
      }
    const RealMatrix lam = (G * k).exp();
    const RealMatrix d = lam * q.q * q.form.form_transpose(lam) - q.q;
    directions.col(s) = Eigen::Map<const Eigen::VectorXd>(d.data(), n * n);
  }

  const Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(q.q.data(), n * n);
  auto svd = directions.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd coeff = svd.solve(target);

  SpanReport report;
  report.sample_count = samples;
  report.span_rank = static_cast<int>(svd.rank());
  report.residual = (directions * coeff - target).norm() / target.norm();
  return report;
}

}  // namespace warpcore::minkowski
