#include "xrt/quadric_fit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "xrt/error.hpp"

namespace xrt {

const char* to_string(QuadricKind kind) noexcept {
  switch (kind) {
    case QuadricKind::Ellipsoid: return "ellipsoid";
    case QuadricKind::OneSheetHyperboloid: return "one_sheet_hyperboloid";
    case QuadricKind::TwoSheetHyperboloid: return "two_sheet_hyperboloid";
    case QuadricKind::EllipticParaboloid: return "elliptic_paraboloid";
    case QuadricKind::HyperbolicParaboloid: return "hyperbolic_paraboloid";
    case QuadricKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

Eigen::Matrix<double, 10, 1> monomials(const Vec3& p) {
  Eigen::Matrix<double, 10, 1> m;
  m << p.x() * p.x(), p.y() * p.y(), p.z() * p.z(), p.x() * p.y(), p.x() * p.z(), p.y() * p.z(),
      p.x(), p.y(), p.z(), 1.0;
  return m;
}

QuadricKind classify(const std::array<double, 10>& c, Vec3& eig_out) {
  Eigen::Matrix3d A;
  A << c[0], c[3] / 2, c[4] / 2,
       c[3] / 2, c[1], c[5] / 2,
       c[4] / 2, c[5] / 2, c[2];
  const Vec3 b(c[6], c[7], c[8]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(A);
  const Vec3 ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  if (scale == 0.0) return QuadricKind::Degenerate;
  const double zero = 1e-8 * scale;
  const int n_zero = static_cast<int>((ev.array().abs() <= zero).count());

  if (n_zero == 0) {
    const Vec3 x0 = -0.5 * A.ldlt().solve(b);
    const double k = x0.dot(A * x0) + b.dot(x0) + c[9];
    if (std::abs(k) <= 1e-10 * std::max(1.0, scale)) return QuadricKind::Degenerate;  // cone
    Vec3 e = -ev / k;
    std::sort(e.data(), e.data() + 3);
    eig_out = e;
    const int pos = static_cast<int>((e.array() > 0).count());
    if (pos == 3) return QuadricKind::Ellipsoid;
    if (pos == 2) return QuadricKind::OneSheetHyperboloid;
    if (pos == 1) return QuadricKind::TwoSheetHyperboloid;
    return QuadricKind::Degenerate;  // empty real locus
  }
  if (n_zero == 1) {
    // Paraboloid when the linear term has a component along the null axis.
    int zi = 0;
    for (int i = 1; i < 3; ++i) if (std::abs(ev[i]) < std::abs(ev[zi])) zi = i;
    const double along = es.eigenvectors().col(zi).dot(b);
    if (std::abs(along) <= 1e-8 * std::max(1.0, b.norm())) return QuadricKind::Degenerate;
    Vec3 e = ev;
    eig_out = e;
    double p = 1.0;
    for (int i = 0; i < 3; ++i) if (i != zi) p *= ev[i];
    return p > 0 ? QuadricKind::EllipticParaboloid : QuadricKind::HyperbolicParaboloid;
  }
  return QuadricKind::Degenerate;
}

}  // namespace

double QuadricFit::eval(const Vec3& x) const {
  const auto m = monomials(x);
  double s = 0.0;
  for (int i = 0; i < 10; ++i) s += coeffs[i] * m[i];
  return s;
}

QuadricFit fit_quadric(const std::vector<Vec3>& points) {
  if (points.size() < 9) throw Error(ErrorCode::DegenerateSpec, "quadric fit needs at least 9 points");
  // Work in coordinates scaled to O(1) for conditioning, then undo.
  double s = 0.0;
  for (const auto& p : points) s = std::max(s, p.cwiseAbs().maxCoeff());
  if (s == 0.0) s = 1.0;
  Eigen::MatrixXd D(points.size(), 10);
  for (std::size_t i = 0; i < points.size(); ++i) D.row(i) = monomials(points[i] / s).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 10, 1> v = svd.matrixV().col(9);

  QuadricFit fit;
  fit.smallest_singular_value = svd.singularValues()[9];
  const double unscale[10] = {1 / (s * s), 1 / (s * s), 1 / (s * s), 1 / (s * s), 1 / (s * s), 1 / (s * s),
                              1 / s, 1 / s, 1 / s, 1.0};
  double norm = 0.0;
  for (int i = 0; i < 10; ++i) {
    fit.coeffs[i] = v[i] * unscale[i];
    norm += fit.coeffs[i] * fit.coeffs[i];
  }
  norm = std::sqrt(norm);
  for (auto& c : fit.coeffs) c /= norm;
  fit.kind = classify(fit.coeffs, fit.eigenvalues);
  return fit;
}

double max_algebraic_residual(const QuadricFit& fit, const std::vector<Vec3>& points) {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, std::abs(fit.eval(p)));
  return m;
}

}  // namespace xrt
