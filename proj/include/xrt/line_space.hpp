#pragma once

// Charts on the space of oriented lines of R^3.
//
// Directions use stereographic projection from the south pole, so that
//   U(xi) = (2 Re xi, 2 Im xi, 1 - |xi|^2) / (1 + |xi|^2),  xi = 0 <-> (0,0,1).
// The fibre coordinate eta of a line through the point (z = x1 + i x2, x3)
// with direction xi is eta = (z - 2 x3 xi - conj(z) xi^2) / 2.

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace xrt {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;

struct LineUV {
  Vec3 U;  // unit direction
  Vec3 V;  // foot of the perpendicular from the origin, U . V = 0
};

struct OrientedLine {
  cplx xi;
  cplx eta;
};

// Flat neutral coordinates Z1 = X1 + i X2, Z2 = X3 + i X4 on R^{2,2}.
struct ConformalPoint {
  cplx Z1;
  cplx Z2;

  std::array<double, 4> real() const { return {Z1.real(), Z1.imag(), Z2.real(), Z2.imag()}; }
  static ConformalPoint from_real(const std::array<double, 4>& x) {
    return {{x[0], x[1]}, {x[2], x[3]}};
  }
};

enum class PairTag { Intersecting, Parallel, SkewPositive, SkewNegative };

struct PairClass {
  PairTag tag;
  double Q;
  std::optional<Vec3> intersection;      // Intersecting only
  std::optional<Vec3> common_direction;  // Parallel only
};

inline constexpr double kTolNull = 1e-9;

Vec3 direction_from_xi(cplx xi);
// Throws ChartDomain for the excluded direction (0,0,-1).
cplx xi_from_direction(const Vec3& U);

cplx eta_from_point(cplx z, double x3, cplx xi);
inline cplx eta_from_point(const Vec3& p, cplx xi) {
  return eta_from_point({p.x(), p.y()}, p.z(), xi);
}

LineUV uv_from_chart(const OrientedLine& line);
OrientedLine chart_from_uv(const LineUV& uv);
// Oriented line through p with (not necessarily unit) direction d.
OrientedLine line_through(const Vec3& p, const Vec3& d);

// Conformal chart over the upper hemisphere |xi| < 1.
ConformalPoint to_conformal(const OrientedLine& line);
OrientedLine from_conformal(const ConformalPoint& p);
// As from_conformal, but far from the origin of the chart, where |xi| rounds
// to 1, returns the (horizontal) limiting line instead of throwing.
OrientedLine conformal_line(const ConformalPoint& p);
// U3 = (1 - |xi|^2) / (1 + |xi|^2) = 1 / sqrt(1 + |Z2 - Z1|^2 / 4), evaluated
// without cancellation.
double conformal_weight(const ConformalPoint& p);

// Q = |Z1 - Z1'|^2 - |Z2 - Z2'|^2. Zero exactly for intersecting or parallel
// pairs; Q > 0 iff (V_a - V_b) . (U_a x U_b) > 0.
double neutral_distance(const OrientedLine& a, const OrientedLine& b);
PairClass classify_pair(const OrientedLine& a, const OrientedLine& b, double tol_null = kTolNull);

// Distance in the fibre metric 4 d eta d eta-bar / (1 + |xi|^2)^2 between two
// parallel lines. Throws NotSameFibre when the directions differ.
double fibre_distance(const OrientedLine& a, const OrientedLine& b, double tol = 1e-12);

// Euclidean closed forms on R^3 used by the ruling checks.
double line_line_distance(const LineUV& a, const LineUV& b);
double point_line_distance(const Vec3& p, const LineUV& line);

}  // namespace xrt
