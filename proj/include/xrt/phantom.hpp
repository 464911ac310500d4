#pragma once

#include <string>
#include <variant>
#include <vector>

#include "xrt/line_space.hpp"

namespace xrt {

// amplitude * exp(-|x - center|^2 / width^2)
struct GaussianBump {
  Vec3 center = Vec3::Zero();
  double amplitude = 1.0;
  double width = 1.0;
};

// Finite sum of Gaussian bumps on R^3.
class Phantom {
 public:
  Phantom() = default;
  explicit Phantom(std::vector<GaussianBump> bumps);

  void add(const GaussianBump& bump);
  const std::vector<GaussianBump>& bumps() const { return bumps_; }
  bool empty() const { return bumps_.empty(); }

  double operator()(const Vec3& x) const;

  // max over bumps of |center| + 8 width; zero for the empty phantom.
  double reach() const;
  double max_width() const;

  Phantom translated(const Vec3& t) const;
  Phantom rotated_about_x3(double angle) const;

  // Exact integral over the plane {x : n . x = offset}, |n| = 1.
  double plane_integral(const Vec3& unit_normal, double offset) const;

 private:
  std::vector<GaussianBump> bumps_;
};

struct HalfSpacePoint {
  cplx z;     // x1 + i x2
  double x3;  // > 0
};

// cosh d = 1 + |p - q|^2 / (2 p3 q3) in the upper half-space model.
double h3_distance(const HalfSpacePoint& p, const HalfSpacePoint& q);

// Bumps on H^3 (upper half-space), amplitude * exp(-d(x, center)^2 / width^2).
class H3Phantom {
 public:
  H3Phantom() = default;
  explicit H3Phantom(std::vector<GaussianBump> bumps);

  void add(const GaussianBump& bump);
  const std::vector<GaussianBump>& bumps() const { return bumps_; }
  bool empty() const { return bumps_.empty(); }

  double operator()(const HalfSpacePoint& x) const;

 private:
  std::vector<GaussianBump> bumps_;
};

using AnyPhantom = std::variant<Phantom, H3Phantom>;

// {"model": "flat" | "halfspace" (optional, default flat),
//  "bumps": [{"center": [x, y, z], "amplitude": a, "width": w}, ...]}
// Throws Error(Parse) naming the offending field path.
AnyPhantom parse_phantom_json(const std::string& text);
AnyPhantom load_phantom_file(const std::string& path);

}  // namespace xrt
