#pragma once
// Helpers shared by the test binaries: seeded samplers and closed-form 3D
// line geometry that does not go through the line-space charts.
#include <cmath>
#include <random>

#include "xrt/line_space.hpp"
#include "xrt/phantom.hpp"

namespace xrt::testing {

inline cplx random_xi(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, 2.0 * M_PI);
  return std::polar(max_abs * std::sqrt(rad(rng)), ang(rng));
}

inline cplx random_eta(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline OrientedLine random_line(std::mt19937_64& rng, double max_xi = 0.95) {
  return {random_xi(rng, max_xi), random_eta(rng)};
}

inline Vec3 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

// Upper-hemisphere unit vector, so the line stays inside the conformal chart.
inline Vec3 random_upper_direction(std::mt19937_64& rng, double min_z = 0.1) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 d(g(rng), g(rng), g(rng));
    d.normalize();
    if (d.z() < 0) d.z() = -d.z();
    if (d.z() > min_z) return d;
  }
}

inline Phantom random_phantom(std::mt19937_64& rng, int bumps = 3) {
  std::uniform_real_distribution<double> amp(0.5, 1.5), width(0.3, 0.6), pos(-0.6, 0.6);
  Phantom f;
  for (int i = 0; i < bumps; ++i) f.add({{pos(rng), pos(rng), pos(rng)}, amp(rng), width(rng)});
  return f;
}

enum class Incidence { Intersecting, Parallel, Skew };

struct LinePairOracle {
  Incidence kind;
  double distance;
  double orientation;  // (p_a - p_b) . (d_a x d_b), sign of the skew pair
};

// Point + direction form, independent of the charts.
inline LinePairOracle line_pair_oracle(const Vec3& pa, const Vec3& da, const Vec3& pb, const Vec3& db,
                                       double tol = 1e-9) {
  const Vec3 ua = da.normalized(), ub = db.normalized();
  const Vec3 n = ua.cross(ub);
  const Vec3 w = pa - pb;
  if (n.norm() < 1e-12) {
    const double d = (w - w.dot(ua) * ua).norm();
    return {Incidence::Parallel, d, 0.0};
  }
  const double triple = w.dot(n);
  const double d = std::abs(triple) / n.norm();
  return {d < tol ? Incidence::Intersecting : Incidence::Skew, d, triple};
}

}  // namespace xrt::testing
