#include "xrt/xray_flat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "parallel.hpp"
#include "xrt/error.hpp"
#include "xrt/quadrature.hpp"

namespace xrt {

namespace {

// Beyond 8 widths a bump contributes below exp(-64) of its peak.
constexpr double kSupportWidths = 8.0;

// Arclength windows along the line where some bump is non-negligible, merged.
std::vector<std::pair<double, double>> bump_windows(const Phantom& f, const LineUV& uv) {
  std::vector<std::pair<double, double>> w;
  for (const auto& b : f.bumps()) {
    const double tc = (b.center - uv.V).dot(uv.U);
    const double d = (uv.V + tc * uv.U - b.center).norm();
    const double reach = kSupportWidths * b.width;
    if (d > reach) continue;
    w.emplace_back(tc - reach, tc + reach);
  }
  std::sort(w.begin(), w.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : w) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

}  // namespace

double xray_transform(const Phantom& f, const OrientedLine& line, const XrayOptions& opts) {
  if (f.empty()) return 0.0;
  const LineUV uv = uv_from_chart(line);
  QuadratureOptions q;
  q.rel_tol = opts.tol;
  q.abs_tol = opts.tol * 1e-3;
  q.max_evaluations = opts.max_evaluations;
  q.max_initial_panel = f.max_width();
  double total = 0.0;
  for (const auto& [a, b] : bump_windows(f, uv)) {
    total += integrate_adaptive([&](double t) { return f(uv.V + t * uv.U); }, a, b, q).value;
  }
  return total;
}

double john_weight(const OrientedLine& line) {
  const double s = std::norm(line.xi);
  return (1.0 - s) / (1.0 + s);
}

double uhe_solution(const Phantom& f, const ConformalPoint& p, const XrayOptions& opts) {
  return conformal_weight(p) * xray_transform(f, conformal_line(p), opts);
}

std::size_t XGrid::size() const {
  const auto n = static_cast<std::size_t>(points);
  return n * n * n * n;
}

ConformalPoint XGrid::point(const std::array<int, 4>& idx) const {
  const auto c = center.real();
  const double h = spacing();
  std::array<double, 4> x{};
  for (int k = 0; k < 4; ++k) x[k] = c[k] - half_extent + idx[k] * h;
  return ConformalPoint::from_real(x);
}

std::array<int, 4> XGrid::unflatten(std::size_t flat) const {
  std::array<int, 4> idx{};
  for (int k = 3; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % points);
    flat /= points;
  }
  return idx;
}

Grid4 sample_on_grid(const ConformalFunction& u, const XGrid& grid, int threads) {
  if (grid.points < 5) throw Error(ErrorCode::InvalidArgument, "grid needs at least 5 points per axis");
  if (!(grid.half_extent > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid half extent must be positive");
  Grid4 out;
  out.n = grid.points;
  out.values.assign(grid.size(), 0.0);
  out.valid.assign(grid.size(), 1);
  detail::parallel_for(grid.size(), [&](std::size_t i) {
    try {
      out.values[i] = u(grid.point(grid.unflatten(i)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ChartDomain) throw;
      out.valid[i] = 0;
    }
  }, threads);
  return out;
}

Grid4 u_on_grid(const Phantom& f, const XGrid& grid, const XrayOptions& opts, int threads) {
  return sample_on_grid([&](const ConformalPoint& p) { return uhe_solution(f, p, opts); }, grid, threads);
}

Grid4 uhe_residual(const Grid4& u, double h) {
  if (u.n < 3) throw Error(ErrorCode::GridTooSmall, "ultrahyperbolic residual needs at least 3 points per axis");
  Grid4 r;
  r.n = u.n - 2;
  const std::size_t m = static_cast<std::size_t>(r.n);
  r.values.assign(m * m * m * m, 0.0);
  r.valid.assign(m * m * m * m, 1);
  const double inv_h2 = 1.0 / (h * h);
  const int sign[4] = {1, 1, -1, -1};
  for (int i = 1; i < u.n - 1; ++i)
    for (int j = 1; j < u.n - 1; ++j)
      for (int k = 1; k < u.n - 1; ++k)
        for (int l = 1; l < u.n - 1; ++l) {
          const std::size_t c = u.index(i, j, k, l);
          const std::size_t out = r.index(i - 1, j - 1, k - 1, l - 1);
          const std::size_t stride[4] = {u.index(1, 0, 0, 0), u.index(0, 1, 0, 0), u.index(0, 0, 1, 0), 1};
          bool ok = u.valid[c] != 0;
          double acc = 0.0;
          for (int a = 0; a < 4 && ok; ++a) {
            const std::size_t lo = c - stride[a], hi = c + stride[a];
            ok = u.valid[lo] && u.valid[hi];
            acc += sign[a] * (u.values[hi] - 2.0 * u.values[c] + u.values[lo]);
          }
          r.valid[out] = ok ? 1 : 0;
          r.values[out] = ok ? acc * inv_h2 : 0.0;
        }
  return r;
}

double sup_norm(const Grid4& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.valid[i]) m = std::max(m, std::abs(g.values[i]));
  }
  return m;
}

namespace {

UheReport convergence_study(const std::function<Grid4(const XGrid&)>& sample, const XGrid& coarse, int levels) {
  if (levels < 2) throw Error(ErrorCode::InvalidArgument, "convergence study needs at least 2 levels");
  UheReport rep;
  XGrid g = coarse;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const Grid4 u = sample(g);
    const double h = g.spacing();
    rep.levels.push_back({h, sup_norm(uhe_residual(u, h))});
    g.half_extent *= 0.5;
  }
  double min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    const double a = rep.levels[i - 1].sup_residual, b = rep.levels[i].sup_residual;
    const double order = (a > 0.0 && b > 0.0) ? std::log2(a / b)
                         : (b == 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.orders.push_back(order);
    min_order = std::min(min_order, order);
  }
  rep.consistent = rep.levels.back().sup_residual <= 1e-12 || min_order >= kMinUheOrder;
  return rep;
}

}  // namespace

UheReport verify_xray_uhe(const Phantom& f, const XGrid& coarse, int levels, const XrayOptions& opts, int threads) {
  return convergence_study([&](const XGrid& g) { return u_on_grid(f, g, opts, threads); }, coarse, levels);
}

UheReport verify_uhe(const ConformalFunction& u, const XGrid& coarse, int levels, int threads) {
  return convergence_study([&](const XGrid& g) { return sample_on_grid(u, g, threads); }, coarse, levels);
}

}  // namespace xrt
