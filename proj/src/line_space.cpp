#include "xrt/line_space.hpp"

#include <cmath>

#include <Eigen/Geometry>

#include "xrt/error.hpp"

namespace xrt {

Vec3 direction_from_xi(cplx xi) {
  const double n = std::norm(xi);
  return Vec3(2.0 * xi.real(), 2.0 * xi.imag(), 1.0 - n) / (1.0 + n);
}

cplx xi_from_direction(const Vec3& U) {
  const Vec3 u = U.normalized();
  const double denom = 1.0 + u.z();
  if (denom <= 1e-14) {
    throw Error(ErrorCode::ChartDomain, "direction (0,0,-1) is outside the (xi, eta) chart");
  }
  return {u.x() / denom, u.y() / denom};
}

cplx eta_from_point(cplx z, double x3, cplx xi) {
  return 0.5 * (z - 2.0 * x3 * xi - std::conj(z) * xi * xi);
}

LineUV uv_from_chart(const OrientedLine& line) {
  const cplx xi = line.xi;
  const cplx eta = line.eta;
  const double a = 1.0 + std::norm(xi);
  const cplx z = 2.0 * (eta - xi * xi * std::conj(eta)) / (a * a);
  const double x3 = -4.0 * (xi * std::conj(eta)).real() / (a * a);
  return {direction_from_xi(xi), Vec3(z.real(), z.imag(), x3)};
}

OrientedLine chart_from_uv(const LineUV& uv) {
  const cplx xi = xi_from_direction(uv.U);
  return {xi, eta_from_point(uv.V, xi)};
}

OrientedLine line_through(const Vec3& p, const Vec3& d) {
  const cplx xi = xi_from_direction(d);
  return {xi, eta_from_point(p, xi)};
}

ConformalPoint to_conformal(const OrientedLine& line) {
  const cplx xi = line.xi;
  const double n = std::norm(xi);
  if (!(n < 1.0)) {
    throw Error(ErrorCode::ChartDomain, "conformal chart requires |xi| < 1");
  }
  const double k = 2.0 / (1.0 - n * n);
  const cplx base = line.eta + xi * xi * std::conj(line.eta);
  const cplx twist = cplx(0.0, 1.0) * (1.0 + n) * xi;
  return {k * (base - twist), k * (base + twist)};
}

OrientedLine conformal_line(const ConformalPoint& p) {
  // Z2 - Z1 = 4i xi / (1 - |xi|^2), Z1 + Z2 = 4 (eta + xi^2 conj(eta)) / (1 - |xi|^4).
  const cplx D = (p.Z2 - p.Z1) / cplx(0.0, 4.0);
  const double d = std::abs(D);
  if (!std::isfinite(d) || !std::isfinite(std::abs(p.Z1 + p.Z2))) {
    throw Error(ErrorCode::ChartDomain, "conformal point is not finite");
  }
  cplx xi = 0.0;
  if (d > 0.0) xi = D / d * (2.0 * d / (1.0 + std::hypot(1.0, 2.0 * d)));
  const cplx S = p.Z1 + p.Z2;
  return {xi, (S - xi * xi * std::conj(S)) / 4.0};
}

OrientedLine from_conformal(const ConformalPoint& p) {
  const OrientedLine line = conformal_line(p);
  if (!(std::norm(line.xi) < 1.0)) throw Error(ErrorCode::ChartDomain, "solved |xi| >= 1");
  return line;
}

double conformal_weight(const ConformalPoint& p) {
  return 1.0 / std::hypot(1.0, 0.5 * std::abs(p.Z2 - p.Z1));
}

double neutral_distance(const OrientedLine& a, const OrientedLine& b) {
  const ConformalPoint pa = to_conformal(a);
  const ConformalPoint pb = to_conformal(b);
  return std::norm(pa.Z1 - pb.Z1) - std::norm(pa.Z2 - pb.Z2);
}

PairClass classify_pair(const OrientedLine& a, const OrientedLine& b, double tol_null) {
  const LineUV la = uv_from_chart(a);
  const LineUV lb = uv_from_chart(b);
  PairClass out{PairTag::SkewPositive, 0.0, std::nullopt, std::nullopt};

  const bool both_in_chart = std::norm(a.xi) < 1.0 && std::norm(b.xi) < 1.0;
  if (both_in_chart) {
    out.Q = neutral_distance(a, b);
  } else {
    // Outside the conformal chart fall back to the reciprocal product, which
    // carries the same sign and zero set.
    out.Q = (la.V - lb.V).dot(la.U.cross(lb.U));
  }

  if (la.U.cross(lb.U).norm() <= tol_null) {
    out.tag = PairTag::Parallel;
    out.common_direction = la.U;
    return out;
  }
  if (std::abs(out.Q) < tol_null) {
    out.tag = PairTag::Intersecting;
    // Midpoint of the common perpendicular.
    const Vec3 w = la.V - lb.V;
    const double uab = la.U.dot(lb.U);
    const double den = 1.0 - uab * uab;
    const double s = (uab * lb.U.dot(w) - la.U.dot(w)) / den;
    const double t = (lb.U.dot(w) - uab * la.U.dot(w)) / den;
    out.intersection = 0.5 * ((la.V + s * la.U) + (lb.V + t * lb.U));
    return out;
  }
  out.tag = out.Q > 0.0 ? PairTag::SkewPositive : PairTag::SkewNegative;
  return out;
}

double fibre_distance(const OrientedLine& a, const OrientedLine& b, double tol) {
  if (std::abs(a.xi - b.xi) > tol) {
    throw Error(ErrorCode::NotSameFibre, "fibre_distance: lines have different directions");
  }
  return 2.0 * std::abs(a.eta - b.eta) / (1.0 + std::norm(a.xi));
}

double line_line_distance(const LineUV& a, const LineUV& b) {
  const Vec3 w = b.V - a.V;
  const Vec3 n = a.U.cross(b.U);
  const double nn = n.norm();
  if (nn < 1e-12) return (w - w.dot(a.U) * a.U).norm();
  return std::abs(w.dot(n)) / nn;
}

double point_line_distance(const Vec3& p, const LineUV& line) {
  const Vec3 w = p - line.V;
  return (w - w.dot(line.U) * line.U).norm();
}

}  // namespace xrt
