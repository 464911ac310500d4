#include "xrt/null_families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "xrt/error.hpp"

namespace xrt {

namespace {

Vec3 polar_direction(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

// Real 4-vector of chart coordinates (Re xi, Im xi, Re eta, Im eta).
Eigen::Vector4d chart_vector(const OrientedLine& l) {
  return {l.xi.real(), l.xi.imag(), l.eta.real(), l.eta.imag()};
}

}  // namespace

NullFamily NullFamily::parallel_to_plane(const Vec3& normal) {
  if (!(normal.norm() > 1e-12) || !normal.allFinite()) {
    throw Error(ErrorCode::DegenerateSpec, "H0: plane normal must be non-zero");
  }
  NullFamily f;
  f.kind_ = NullKind::H0;
  f.normal_ = normal.normalized();
  const Vec3 seed = std::abs(f.normal_.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  f.e1_ = f.normal_.cross(seed).normalized();
  f.e2_ = f.normal_.cross(f.e1_);
  return f;
}

NullFamily NullFamily::through_curve(std::vector<Vec3> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::DegenerateSpec, "H1: curve needs at least two samples");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!((points[i] - points[i - 1]).norm() > 1e-12)) {
      throw Error(ErrorCode::DegenerateSpec,
                  "H1: curve samples " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " coincide");
    }
  }
  NullFamily f;
  f.kind_ = NullKind::H1;
  f.curve_ = std::move(points);
  return f;
}

NullFamily NullFamily::tangent_to_ellipsoid(const Vec3& center, const Vec3& semi_axes) {
  if (!(semi_axes.minCoeff() > 0.0)) {
    throw Error(ErrorCode::DegenerateSpec, "H2: ellipsoid semi-axes must be positive");
  }
  NullFamily f;
  f.kind_ = NullKind::H2;
  f.center_ = center;
  f.axes_ = semi_axes;
  return f;
}

LineUV NullFamily::line_uv(const ParamPoint& p) const {
  Vec3 point;
  Vec3 dir;
  switch (kind_) {
    case NullKind::H0: {
      dir = std::cos(p[0]) * e1_ + std::sin(p[0]) * e2_;
      point = p[1] * normal_.cross(dir) + p[2] * normal_;
      break;
    }
    case NullKind::H1: {
      const double last = static_cast<double>(curve_.size() - 1);
      const double sigma = std::clamp(p[0], 0.0, last);
      const auto seg = std::min(static_cast<std::size_t>(sigma), curve_.size() - 2);
      const double frac = sigma - static_cast<double>(seg);
      point = (1.0 - frac) * curve_[seg] + frac * curve_[seg + 1];
      dir = polar_direction(p[1], p[2]);
      break;
    }
    case NullKind::H2: {
      const double th = p[0], ph = p[1], psi = p[2];
      point = center_ + Vec3(axes_.x() * std::sin(th) * std::cos(ph),
                             axes_.y() * std::sin(th) * std::sin(ph), axes_.z() * std::cos(th));
      const Vec3 d_th(axes_.x() * std::cos(th) * std::cos(ph), axes_.y() * std::cos(th) * std::sin(ph),
                      -axes_.z() * std::sin(th));
      const Vec3 normal = Vec3((point.x() - center_.x()) / (axes_.x() * axes_.x()),
                               (point.y() - center_.y()) / (axes_.y() * axes_.y()),
                               (point.z() - center_.z()) / (axes_.z() * axes_.z()))
                              .normalized();
      const Vec3 t1 = d_th.normalized();
      const Vec3 t2 = normal.cross(t1);
      dir = std::cos(psi) * t1 + std::sin(psi) * t2;
      break;
    }
  }
  dir.normalize();
  return {dir, point - point.dot(dir) * dir};
}

OrientedLine NullFamily::line(const ParamPoint& p) const { return chart_from_uv(line_uv(p)); }

std::vector<OrientedLine> sample_null_hypersurface(const NullFamily& family, const ParamGrid& grid) {
  for (int a = 0; a < 3; ++a) {
    if (grid[a].count < 1 || !(grid[a].hi >= grid[a].lo) ||
        (grid[a].count > 1 && !(grid[a].hi > grid[a].lo))) {
      throw Error(ErrorCode::DegenerateSpec,
                  "null family grid axis " + std::to_string(a) + " is empty or degenerate");
    }
  }
  std::vector<OrientedLine> out;
  out.reserve(static_cast<std::size_t>(grid[0].count) * grid[1].count * grid[2].count);
  for (int i = 0; i < grid[0].count; ++i) {
    for (int j = 0; j < grid[1].count; ++j) {
      for (int k = 0; k < grid[2].count; ++k) {
        const ParamPoint p{grid[0].at(i), grid[1].at(j), grid[2].at(k)};
        // Immersion check on the chart map in the (xi, eta) coordinates.
        const double h = 1e-6;
        Eigen::Matrix<double, 4, 3> J;
        for (int a = 0; a < 3; ++a) {
          ParamPoint plus = p, minus = p;
          plus[a] += h;
          minus[a] -= h;
          J.col(a) = (chart_vector(family.line(plus)) - chart_vector(family.line(minus))) / (2 * h);
        }
        Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> svd(J);
        const auto sv = svd.singularValues();
        if (!(sv(2) > 1e-8 * std::max(1.0, sv(0)))) {
          throw Error(ErrorCode::DegenerateSpec, "null family chart map is not an immersion at grid node (" +
                                                     std::to_string(i) + "," + std::to_string(j) + "," +
                                                     std::to_string(k) + ")");
        }
        out.push_back(family.line(p));
      }
    }
  }
  return out;
}

double nullity_degeneracy_check(const NullFamily& family, const ParamPoint& at, double h) {
  return nullity_degeneracy_check([&family](const ParamPoint& p) { return family.line(p); }, at, h);
}

double nullity_degeneracy_check(const std::function<OrientedLine(const ParamPoint&)>& family, const ParamPoint& at,
                                double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "nullity check needs h > 0");
  std::array<ConformalPoint, 3> d;
  for (int a = 0; a < 3; ++a) {
    ParamPoint plus = at, minus = at;
    plus[a] += h;
    minus[a] -= h;
    const ConformalPoint zp = to_conformal(family(plus));
    const ConformalPoint zm = to_conformal(family(minus));
    d[a] = {(zp.Z1 - zm.Z1) / (2 * h), (zp.Z2 - zm.Z2) / (2 * h)};
  }
  Eigen::Matrix3d g;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      g(a, b) = (d[a].Z1 * std::conj(d[b].Z1)).real() - (d[a].Z2 * std::conj(d[b].Z2)).real();
    }
  }
  return std::abs(g.determinant());
}

}  // namespace xrt
