#pragma once

// Regular null hypersurfaces of line space as explicit 3-parameter families:
//   H0  lines parallel to a fixed plane     (theta, s, t)
//   H1  lines through a fixed curve          (sigma, polar, azimuth)
//   H2  lines tangent to a convex ellipsoid  (theta, phi, psi)

#include <array>
#include <functional>
#include <vector>

#include "xrt/line_space.hpp"

namespace xrt {

enum class NullKind { H0, H1, H2 };

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

using ParamGrid = std::array<ParamRange, 3>;
using ParamPoint = std::array<double, 3>;

class NullFamily {
 public:
  static NullFamily parallel_to_plane(const Vec3& normal);
  // The curve is the polyline through `points`, parameterised by sigma in
  // [0, points.size() - 1].
  static NullFamily through_curve(std::vector<Vec3> points);
  static NullFamily tangent_to_ellipsoid(const Vec3& center, const Vec3& semi_axes);

  NullKind kind() const { return kind_; }
  OrientedLine line(const ParamPoint& p) const;
  LineUV line_uv(const ParamPoint& p) const;

 private:
  NullKind kind_ = NullKind::H0;
  Vec3 normal_ = Vec3::UnitZ();
  Vec3 e1_ = Vec3::UnitX();
  Vec3 e2_ = Vec3::UnitY();
  std::vector<Vec3> curve_;
  Vec3 center_ = Vec3::Zero();
  Vec3 axes_ = Vec3::Ones();
};

// Samples the family on a product grid. Throws DegenerateSpec when a range is
// empty or the chart map is not an immersion on the grid.
std::vector<OrientedLine> sample_null_hypersurface(const NullFamily& family, const ParamGrid& grid);

// |det| of the 3x3 metric induced by dZ1 dZ1-bar - dZ2 dZ2-bar on the family
// at `at`, from central differences with step h. Tends to zero as O(h^2) for
// null families. Throws ChartDomain when a stencil line has |xi| >= 1.
double nullity_degeneracy_check(const NullFamily& family, const ParamPoint& at, double h);
double nullity_degeneracy_check(const std::function<OrientedLine(const ParamPoint&)>& family, const ParamPoint& at,
                                double h);

}  // namespace xrt
