#include "xrt/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xrt/error.hpp"

namespace xrt {

namespace {

void validate_width(const GaussianBump& b) {
  if (!(b.width > 0.0) || !std::isfinite(b.width)) {
    throw Error(ErrorCode::InvalidArgument, "bump width must be positive and finite");
  }
  if (!std::isfinite(b.amplitude) || !b.center.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "bump amplitude and center must be finite");
  }
}

}  // namespace

Phantom::Phantom(std::vector<GaussianBump> bumps) {
  for (const auto& b : bumps) add(b);
}

void Phantom::add(const GaussianBump& bump) {
  validate_width(bump);
  bumps_.push_back(bump);
}

double Phantom::operator()(const Vec3& x) const {
  double sum = 0.0;
  for (const auto& b : bumps_) {
    sum += b.amplitude * std::exp(-(x - b.center).squaredNorm() / (b.width * b.width));
  }
  return sum;
}

double Phantom::reach() const {
  double r = 0.0;
  for (const auto& b : bumps_) r = std::max(r, b.center.norm() + 8.0 * b.width);
  return r;
}

double Phantom::max_width() const {
  double w = 0.0;
  for (const auto& b : bumps_) w = std::max(w, b.width);
  return w;
}

Phantom Phantom::translated(const Vec3& t) const {
  Phantom out = *this;
  for (auto& b : out.bumps_) b.center += t;
  return out;
}

Phantom Phantom::rotated_about_x3(double angle) const {
  Phantom out = *this;
  const double c = std::cos(angle), s = std::sin(angle);
  for (auto& b : out.bumps_) {
    const Vec3 p = b.center;
    b.center = Vec3(c * p.x() - s * p.y(), s * p.x() + c * p.y(), p.z());
  }
  return out;
}

double Phantom::plane_integral(const Vec3& unit_normal, double offset) const {
  double sum = 0.0;
  for (const auto& b : bumps_) {
    const double d = unit_normal.dot(b.center) - offset;
    sum += b.amplitude * std::numbers::pi * b.width * b.width * std::exp(-d * d / (b.width * b.width));
  }
  return sum;
}

double h3_distance(const HalfSpacePoint& p, const HalfSpacePoint& q) {
  const double num = std::norm(p.z - q.z) + (p.x3 - q.x3) * (p.x3 - q.x3);
  // acosh(1 + u) = 2 asinh(sqrt(u / 2)) keeps precision near coincidence.
  return 2.0 * std::asinh(std::sqrt(num / (4.0 * p.x3 * q.x3)));
}

H3Phantom::H3Phantom(std::vector<GaussianBump> bumps) {
  for (const auto& b : bumps) add(b);
}

void H3Phantom::add(const GaussianBump& bump) {
  validate_width(bump);
  if (!(bump.center.z() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "half-space bump center needs x3 > 0");
  }
  bumps_.push_back(bump);
}

double H3Phantom::operator()(const HalfSpacePoint& x) const {
  double sum = 0.0;
  for (const auto& b : bumps_) {
    const double d = h3_distance(x, {{b.center.x(), b.center.y()}, b.center.z()});
    sum += b.amplitude * std::exp(-d * d / (b.width * b.width));
  }
  return sum;
}

}  // namespace xrt
