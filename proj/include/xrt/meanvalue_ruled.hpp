#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "xrt/mesh.hpp"
#include "xrt/xray_flat.hpp"

namespace xrt {

struct MeanValuePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Trapezoid rule on n points for
//   lhs = int u(a + r cos t, b + r sin t, c, d) dt,
//   rhs = int u(a, b, c + r cos t, d + r sin t) dt.
MeanValuePair asgeirsson_check(const ConformalFunction& u, double a, double b, double c, double d,
                               double r, int n);

enum class ConicKind { Circles, Hyperbolae, Parabolae };

const char* to_string(ConicKind kind) noexcept;

// Canonical conjugate pairs about `center`:
//   Circles     S in the (X1, X2) plane, S-perp in (X3, X4), radius r0.
//   Hyperbolae  S = (+-r0 cosh t, 0, r0 sinh t, 0), S-perp = (0, r0 sinh t, 0, +-r0 cosh t),
//               both branches of each.
//   Parabolae   S(t) = delta m + t e2 + (c t^2 / 2) n, S-perp(s) = s e4 + (c s^2 / 2) n with
//               the null vectors n = (1,0,1,0), m = (1,0,-1,0) and c = -1 / (2 delta).
// r0_perp, when set, replaces r0 on S-perp and breaks conjugacy.
struct ConjugateConicPair {
  ConicKind kind = ConicKind::Circles;
  double r0 = 1.0;
  ConformalPoint center{};
  double delta = 1.0;
  std::optional<double> r0_perp;
};

// Point of S (which = 0) or S-perp (which = 1). branch selects the sign of the
// cosh term for hyperbolae and is ignored otherwise.
ConformalPoint conic_point(const ConjugateConicPair& pair, int which, double t, int branch = +1);

struct ConicIntegrals {
  double on_s = 0.0;
  double on_s_perp = 0.0;
  double window = 0.0;    // final parameter half-window (unbounded kinds)
  double tail = 0.0;      // largest |u| seen at the window ends
  double change = 0.0;    // change of the integrals over the last doubling
};

struct ConicOptions {
  int n = 256;                 // trapezoid points for circles
  double decay_tol = 1e-12;    // |u| at the window ends
  double initial_window = 2.0;
  double max_window = 256.0;
  double quad_tol = 1e-11;
};

// Arclength integrals of u over S and S-perp. Unbounded curves are truncated
// to [-T, T] with T doubled until u falls below decay_tol at the ends and one
// further doubling changes neither integral. Throws NonDecayingIntegrand when
// max_window is reached first.
ConicIntegrals conic_pair_integrals(const ConformalFunction& u, const ConjugateConicPair& pair,
                                    const ConicOptions& opts = {});

// Largest |Q| between sampled points of S and S-perp.
double conic_nullity(const ConjugateConicPair& pair, int samples, double window);

struct RuledFamily {
  std::function<ConformalPoint(double)> curve;
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;

  bool empty() const { return !curve; }
  double param(int i, int m) const;
  OrientedLine line(double u) const { return from_conformal(curve(u)); }
};

// The two line families. Hyperbolae use the positive branch on
// [-window, window]; parabolae use [-window, window]; circles are periodic.
std::pair<RuledFamily, RuledFamily> lines_from_conic(const ConjugateConicPair& pair, double window = 2.0);

struct RulingDistances {
  double max_distance = 0.0;
  double min_distance = 0.0;
  int parallel_pairs = 0;
};

// 3D line-line distances over the m x m sample grid. same_family skips i == j.
// Parallel pairs (|U_a x U_b| below parallel_tol) meet at infinity and count
// as distance 0; they are tallied in parallel_pairs.
RulingDistances double_ruling_check(const RuledFamily& a, const RuledFamily& b, int m,
                                    bool same_family = false, int threads = 0,
                                    double parallel_tol = 1e-9);

// Each family contributes samples_u x samples_r vertices V(u) + s U(u) with
// s in [-half_length, half_length], triangulated strip by strip.
TriangleMesh ruled_surface_mesh(const RuledFamily& a, const RuledFamily& b, int samples_u, int samples_r,
                                double half_length);

}  // namespace xrt
