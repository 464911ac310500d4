#include "xrt/meanvalue_ruled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "xrt/error.hpp"
#include "xrt/quadrature.hpp"

namespace xrt {

using std::numbers::pi;

MeanValuePair asgeirsson_check(const ConformalFunction& u, double a, double b, double c, double d,
                               double r, int n) {
  if (!(r > 0.0) || n < 1) throw Error(ErrorCode::InvalidArgument, "asgeirsson_check needs r > 0 and n >= 1");
  MeanValuePair out;
  out.lhs = integrate_periodic(
      [&](double t) { return u(ConformalPoint::from_real({a + r * std::cos(t), b + r * std::sin(t), c, d})); }, n);
  out.rhs = integrate_periodic(
      [&](double t) { return u(ConformalPoint::from_real({a, b, c + r * std::cos(t), d + r * std::sin(t)})); }, n);
  return out;
}

const char* to_string(ConicKind kind) noexcept {
  switch (kind) {
    case ConicKind::Circles: return "circles";
    case ConicKind::Hyperbolae: return "hyperbolae";
    case ConicKind::Parabolae: return "parabolae";
  }
  return "unknown";
}

ConformalPoint conic_point(const ConjugateConicPair& pair, int which, double t, int branch) {
  const auto o = pair.center.real();
  const double r = (which == 1 && pair.r0_perp) ? *pair.r0_perp : pair.r0;
  std::array<double, 4> x = o;
  switch (pair.kind) {
    case ConicKind::Circles:
      if (which == 0) {
        x[0] += r * std::cos(t);
        x[1] += r * std::sin(t);
      } else {
        x[2] += r * std::cos(t);
        x[3] += r * std::sin(t);
      }
      break;
    case ConicKind::Hyperbolae: {
      const double ch = branch >= 0 ? r * std::cosh(t) : -r * std::cosh(t);
      if (which == 0) {
        x[0] += ch;
        x[2] += r * std::sinh(t);
      } else {
        x[1] += r * std::sinh(t);
        x[3] += ch;
      }
      break;
    }
    case ConicKind::Parabolae: {
      const double c = -1.0 / (2.0 * pair.delta);
      const double q = 0.5 * c * t * t;
      if (which == 0) {
        x[0] += pair.delta + q;
        x[1] += t;
        x[2] += -pair.delta + q;
      } else {
        x[0] += q;
        x[2] += q;
        x[3] += t;
      }
      break;
    }
  }
  return ConformalPoint::from_real(x);
}

namespace {

void check_pair(const ConjugateConicPair& pair) {
  if (pair.kind != ConicKind::Parabolae && !(pair.r0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "conic radius r0 must be positive");
  }
  if (pair.kind == ConicKind::Parabolae && pair.delta == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "parabola offset delta must be nonzero");
  }
  if (pair.r0_perp && !(*pair.r0_perp > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "r0_perp must be positive");
  }
}

// Speed of the parameterisation in the flat neutral metric (arclength factor).
double line_element(const ConjugateConicPair& pair, int which) {
  if (pair.kind == ConicKind::Parabolae) return 1.0;
  return (which == 1 && pair.r0_perp) ? *pair.r0_perp : pair.r0;
}

}  // namespace

ConicIntegrals conic_pair_integrals(const ConformalFunction& u, const ConjugateConicPair& pair,
                                    const ConicOptions& opts) {
  check_pair(pair);
  ConicIntegrals out;
  if (pair.kind == ConicKind::Circles) {
    for (int which = 0; which < 2; ++which) {
      const double v = line_element(pair, which) *
                       integrate_periodic([&](double t) { return u(conic_point(pair, which, t)); }, opts.n);
      (which == 0 ? out.on_s : out.on_s_perp) = v;
    }
    return out;
  }

  const std::vector<int> branches = pair.kind == ConicKind::Hyperbolae ? std::vector<int>{+1, -1}
                                                                       : std::vector<int>{+1};
  QuadratureOptions q;
  q.rel_tol = opts.quad_tol;
  q.abs_tol = opts.quad_tol * 1e-2;
  q.max_evaluations = 400000;
  q.max_initial_panel = 0.25;

  auto integrate_on = [&](int which, double T) {
    double sum = 0.0;
    for (int br : branches) {
      sum += integrate_adaptive([&](double t) { return u(conic_point(pair, which, t, br)); }, -T, T, q).value;
    }
    return line_element(pair, which) * sum;
  };
  auto tail_at = [&](double T) {
    double m = 0.0;
    for (int which = 0; which < 2; ++which)
      for (int br : branches)
        for (double t : {-T, T}) m = std::max(m, std::abs(u(conic_point(pair, which, t, br))));
    return m;
  };

  double T = opts.initial_window;
  double prev_s = integrate_on(0, T), prev_p = integrate_on(1, T);
  while (true) {
    const double T2 = 2.0 * T;
    if (T2 > opts.max_window) {
      throw Error(ErrorCode::NonDecayingIntegrand,
                  "conic integrand did not decay below tolerance within the maximum window");
    }
    const double s = integrate_on(0, T2), p = integrate_on(1, T2);
    const double change = std::max(std::abs(s - prev_s), std::abs(p - prev_p));
    const double tail = tail_at(T);
    const double scale = std::max({1.0, std::abs(s), std::abs(p)});
    if (tail <= opts.decay_tol && change <= 10.0 * opts.quad_tol * scale) {
      out.on_s = s;
      out.on_s_perp = p;
      out.window = T2;
      out.tail = tail_at(T2);
      out.change = change;
      return out;
    }
    prev_s = s;
    prev_p = p;
    T = T2;
  }
}

double conic_nullity(const ConjugateConicPair& pair, int samples, double window) {
  check_pair(pair);
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "conic_nullity needs at least 2 samples");
  const bool periodic = pair.kind == ConicKind::Circles;
  auto param = [&](int i) {
    return periodic ? 2.0 * pi * i / samples : -window + 2.0 * window * i / (samples - 1);
  };
  const std::vector<int> branches = pair.kind == ConicKind::Hyperbolae ? std::vector<int>{+1, -1}
                                                                       : std::vector<int>{+1};
  double worst = 0.0;
  for (int ba : branches)
    for (int bb : branches)
      for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
          const ConformalPoint p = conic_point(pair, 0, param(i), ba);
          const ConformalPoint q = conic_point(pair, 1, param(j), bb);
          const double Q = std::norm(p.Z1 - q.Z1) - std::norm(p.Z2 - q.Z2);
          worst = std::max(worst, std::abs(Q));
        }
  return worst;
}

double RuledFamily::param(int i, int m) const {
  if (periodic) return lo + (hi - lo) * i / m;
  return m == 1 ? lo : lo + (hi - lo) * i / (m - 1);
}

std::pair<RuledFamily, RuledFamily> lines_from_conic(const ConjugateConicPair& pair, double window) {
  check_pair(pair);
  RuledFamily a, b;
  a.curve = [pair](double t) { return conic_point(pair, 0, t); };
  b.curve = [pair](double t) { return conic_point(pair, 1, t); };
  if (pair.kind == ConicKind::Circles) {
    a.lo = b.lo = 0.0;
    a.hi = b.hi = 2.0 * pi;
    a.periodic = b.periodic = true;
  } else {
    a.lo = b.lo = -window;
    a.hi = b.hi = window;
  }
  return {a, b};
}

RulingDistances double_ruling_check(const RuledFamily& a, const RuledFamily& b, int m, bool same_family,
                                    int threads, double parallel_tol) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "double_ruling_check needs m >= 2");
  if (a.empty() || b.empty()) return {};
  std::vector<LineUV> la(m), lb(m);
  for (int i = 0; i < m; ++i) {
    la[i] = uv_from_chart(a.line(a.param(i, m)));
    lb[i] = uv_from_chart(b.line(b.param(i, m)));
  }
  std::vector<double> row_max(m, 0.0), row_min(m, std::numeric_limits<double>::infinity());
  std::vector<int> row_parallel(m, 0);
  detail::parallel_for(static_cast<std::size_t>(m), [&](std::size_t i) {
    for (int j = 0; j < m; ++j) {
      if (same_family && static_cast<int>(i) == j) continue;
      double d = 0.0;
      if (la[i].U.cross(lb[j].U).norm() <= parallel_tol) {
        ++row_parallel[i];
      } else {
        d = line_line_distance(la[i], lb[j]);
      }
      row_max[i] = std::max(row_max[i], d);
      row_min[i] = std::min(row_min[i], d);
    }
  }, threads);
  RulingDistances out{0.0, std::numeric_limits<double>::infinity(), 0};
  for (int i = 0; i < m; ++i) {
    out.parallel_pairs += row_parallel[i];
    out.max_distance = std::max(out.max_distance, row_max[i]);
    out.min_distance = std::min(out.min_distance, row_min[i]);
  }
  return out;
}

namespace {

TriangleMesh family_mesh(const RuledFamily& f, int su, int sr, double half_length) {
  TriangleMesh mesh;
  if (f.empty()) return mesh;
  for (int i = 0; i < su; ++i) {
    const LineUV l = uv_from_chart(f.line(f.param(i, su)));
    for (int j = 0; j < sr; ++j) {
      const double s = sr == 1 ? 0.0 : -half_length + 2.0 * half_length * j / (sr - 1);
      mesh.vertices.push_back(l.V + s * l.U);
    }
  }
  const int strips = f.periodic ? su : su - 1;
  for (int i = 0; i < strips; ++i) {
    const int i1 = (i + 1) % su;
    for (int j = 0; j + 1 < sr; ++j) {
      const int a = i * sr + j, b = i1 * sr + j;
      mesh.faces.push_back({a, b, b + 1});
      mesh.faces.push_back({a, b + 1, a + 1});
    }
  }
  return mesh;
}

}  // namespace

TriangleMesh ruled_surface_mesh(const RuledFamily& a, const RuledFamily& b, int samples_u, int samples_r,
                                double half_length) {
  if (samples_u < 2 || samples_r < 2) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 2 samples per direction");
  TriangleMesh mesh = family_mesh(a, samples_u, samples_r, half_length);
  mesh.append(family_mesh(b, samples_u, samples_r, half_length));
  return mesh;
}

}  // namespace xrt
