#include "xrt/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "xrt/error.hpp"
#include "xrt/quadrature.hpp"

namespace xrt {

using std::numbers::pi;

H0Chart::H0Chart(cplx xi0) : xi0_(xi0) {
  if (std::abs(std::abs(xi0) - 1.0) < 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "H0 chart needs |xi0| != 1");
  }
}

cplx H0Chart::nu(double alpha) const {
  const cplx e = std::polar(1.0, alpha);
  return (xi0_ + e) / (1.0 - std::conj(xi0_) * e);
}

OrientedLine H0Chart::line(double R, double alpha, double r) const {
  const cplx n = nu(alpha);
  const double r0 = std::abs(n);
  const cplx eA = n / r0;
  const cplx I(0.0, 1.0);
  return {I * eA, -(r - I * R) * ((r0 - I) / (r0 + I)) * eA};
}

double H0GridSpec::alpha(int j) const { return 2.0 * pi * j / n_alpha; }

H0GridSpec default_h0_grid(const Phantom& f, int n_R, int n_alpha, int n_r) {
  H0GridSpec s;
  s.n_R = n_R;
  s.n_alpha = n_alpha;
  s.n_r = n_r;
  const double extent = f.empty() ? 1.0 : f.reach() + 8.0 * f.max_width();
  s.R_max = s.r_max = extent;
  return s;
}

H0DataGrid ingest_h0_data(const Phantom& f, const H0Chart& chart, const H0GridSpec& spec, const XrayOptions& opts,
                          int threads) {
  if (spec.n_R < 8 || spec.n_alpha < 4 || spec.n_r < 5 || !(spec.R_max > 0.0) || !(spec.r_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "H0 grid too small");
  }
  H0DataGrid data;
  data.spec = spec;
  data.values.assign(static_cast<std::size_t>(spec.n_R + 1) * spec.n_alpha * spec.n_r, 0.0);
  detail::parallel_for(data.values.size(), [&](std::size_t flat) {
    const int k = static_cast<int>(flat % spec.n_r);
    const int j = static_cast<int>((flat / spec.n_r) % spec.n_alpha);
    const int i = static_cast<int>(flat / (static_cast<std::size_t>(spec.n_r) * spec.n_alpha));
    data.values[flat] = xray_transform(f, chart.line(spec.R(i), spec.alpha(j), spec.r(k)), opts);
  }, threads);
  return data;
}

std::vector<double> plane_averages(const H0DataGrid& data) {
  const H0GridSpec& s = data.spec;
  std::vector<double> F(s.n_R + 1, 0.0);
  for (int i = 0; i <= s.n_R; ++i) {
    double acc = 0.0;
    for (int j = 0; j < s.n_alpha; ++j) {
      double line = 0.0;
      for (int k = 0; k < s.n_r; ++k) {
        const double w = (k == 0 || k == s.n_r - 1) ? 0.5 : 1.0;
        line += w * data.at(i, j, k);
      }
      acc += line * s.dr();
    }
    F[i] = acc / s.n_alpha;
  }
  return F;
}

InversionDiagnostics john_inversion(const H0DataGrid& data, double rel_spread_tol) {
  const H0GridSpec& s = data.spec;
  const std::vector<double> F = plane_averages(data);
  const double h = s.dR();
  auto g = [&](int i) { return (F[i] - F[0]) / (s.R(i) * s.R(i)); };
  // Trapezoid from R = m h to R_max.
  auto I = [&](int m) {
    double acc = 0.5 * (g(m) + g(s.n_R));
    for (int i = m + 1; i < s.n_R; ++i) acc += g(i);
    return acc * h;
  };
  const int m = 2;
  if (4 * m >= s.n_R) throw Error(ErrorCode::SingularQuadratureFailure, "R grid too coarse for extrapolation");
  const double i1 = I(m), i2 = I(2 * m), i4 = I(4 * m);
  // g is even in R, so I(eps) = I0 - g(0) eps - c eps^3 + O(eps^5). The first
  // combination removes the eps term, the second the eps^3 term.
  const double j1 = 2.0 * i1 - i2, j2 = 2.0 * i2 - i4;
  const double j = (8.0 * j1 - j2) / 7.0;
  const double tail = -F[0] / s.R_max;

  InversionDiagnostics d;
  d.value = -(j + tail) / pi;
  d.tail = tail;
  d.richardson_spread = std::abs(j1 - j2) / (7.0 * pi);
  d.limit_row = g(1);
  const double scale = std::max(1.0, std::abs(d.value));
  if (!std::isfinite(d.value) || d.richardson_spread > rel_spread_tol * scale) {
    throw Error(ErrorCode::SingularQuadratureFailure, "R -> 0 extrapolation did not converge");
  }
  return d;
}

double john_plane_formula(const Phantom& f, const H0Chart& chart, int n_alpha, double tol) {
  if (f.empty()) return 0.0;
  const Vec3 U0 = direction_from_xi(chart.xi0());
  const Vec3 e1 = (std::abs(U0.z()) < 0.9 ? U0.cross(Vec3::UnitZ()) : U0.cross(Vec3::UnitX())).normalized();
  const Vec3 e2 = U0.cross(e1);
  auto F = [&](double R) {
    return integrate_periodic([&](double a) {
      return f.plane_integral(std::cos(a) * e1 + std::sin(a) * e2, R);
    }, n_alpha) / (2.0 * pi);
  };
  const double F0 = F(0.0);
  const double R_max = f.reach() + 8.0 * f.max_width();
  QuadratureOptions q;
  q.rel_tol = tol;
  q.abs_tol = tol * 1e-2;
  q.max_initial_panel = f.max_width();
  const double body = integrate_adaptive([&](double R) { return (F(R) - F0) / (R * R); }, 0.0, R_max, q).value;
  return -(body - F0 / R_max) / pi;
}

ReconstructionReport reconstruct(const Phantom& f, cplx xi0, cplx eta0, int n_R, int n_alpha, int n_r, int levels,
                                 int threads) {
  if (levels < 1) throw Error(ErrorCode::InvalidArgument, "need at least one refinement level");
  ReconstructionReport rep;
  rep.xi0 = xi0;
  rep.eta0 = eta0;
  const OrientedLine gamma0{xi0, eta0};
  rep.translation = -uv_from_chart(gamma0).V;
  const Phantom g = f.translated(rep.translation);
  const H0Chart chart(xi0);

  rep.direct = xray_transform(g, chart.gamma0());
  rep.plane_formula = john_plane_formula(g, chart);
  for (int lvl = 0; lvl < levels; ++lvl) {
    const int scale = 1 << lvl;
    const H0GridSpec spec = default_h0_grid(g, n_R * scale, n_alpha, n_r * scale);
    const double v = john_inversion(ingest_h0_data(g, chart, spec, {}, threads)).value;
    RefinementLevel row{spec.n_R, spec.n_alpha, spec.n_r, v, std::abs(v - rep.direct), 0.0};
    row.rel_error = row.abs_error / std::max(1.0, std::abs(rep.direct));
    rep.refinement.push_back(row);
  }
  rep.reconstructed = rep.refinement.front().value;
  rep.rel_error = rep.refinement.front().rel_error;
  rep.plane_rel_difference = std::abs(rep.plane_formula - rep.reconstructed) / std::max(1.0, std::abs(rep.direct));
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.refinement.size(); ++i) {
    if (!(rep.refinement[i].abs_error < rep.refinement[i - 1].abs_error)) rep.monotone = false;
  }
  return rep;
}

}  // namespace xrt
