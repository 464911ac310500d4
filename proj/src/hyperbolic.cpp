#include "xrt/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "parallel.hpp"
#include "xrt/error.hpp"
#include "xrt/quadrature.hpp"

namespace xrt {

namespace {

constexpr cplx I{0.0, 1.0};

void require_xi(const GeodesicH3& g) {
  if (g.xi == cplx(0.0) || !std::isfinite(std::abs(g.xi)) || !std::isfinite(std::abs(g.eta))) {
    throw Error(ErrorCode::ChartDomain, "geodesic chart needs finite xi != 0");
  }
}

}  // namespace

HalfSpacePoint geodesic_point(const GeodesicH3& g, double r) {
  require_xi(g);
  return {g.eta + std::tanh(r) / std::conj(g.xi), 1.0 / (std::abs(g.xi) * std::cosh(r))};
}

std::pair<cplx, cplx> geodesic_endpoints(const GeodesicH3& g) {
  require_xi(g);
  const cplx w = 1.0 / std::conj(g.xi);
  return {g.eta - w, g.eta + w};
}

GeodesicH3 geodesic_from_mu(const BoundaryPair& mu) {
  if (mu.mu2 == cplx(0.0)) throw Error(ErrorCode::ChartDomain, "mu2 = 0 has no (xi, eta) image");
  const cplx den = std::conj(mu.mu1) + 1.0 / mu.mu2;
  if (std::abs(den) == 0.0) throw Error(ErrorCode::ChartDomain, "conj(mu1) + 1/mu2 = 0");
  GeodesicH3 g{2.0 / den, 0.5 * (-mu.mu1 + 1.0 / std::conj(mu.mu2))};
  require_xi(g);
  return g;
}

BoundaryPair mu_from_geodesic(const GeodesicH3& g) {
  require_xi(g);
  const cplx s = 2.0 / std::conj(g.xi);
  const cplx t = 2.0 * g.eta;
  const cplx w = 0.5 * (s + t);
  if (std::abs(w) == 0.0) throw Error(ErrorCode::ChartDomain, "geodesic ends at infinity (mu2 undefined)");
  return {0.5 * (s - t), 1.0 / std::conj(w)};
}

double halfspace_metric_speed(const GeodesicH3& g, double r, double h) {
  const HalfSpacePoint a = geodesic_point(g, r - h), b = geodesic_point(g, r + h), c = geodesic_point(g, r);
  const double dz = std::abs(b.z - a.z) / (2 * h);
  const double dx3 = (b.x3 - a.x3) / (2 * h);
  return std::sqrt(dz * dz + dx3 * dx3) / c.x3;
}

HalfSpacePoint ball_to_halfspace(const Vec3& p) {
  const Vec3 n(0, 0, 1);
  const double q = (p - n).squaredNorm();
  if (q == 0.0) throw Error(ErrorCode::ChartDomain, "north pole maps to infinity");
  return {cplx(2 * p.x(), 2 * p.y()) / q, (1.0 - p.squaredNorm()) / q};
}

Vec3 halfspace_to_ball(const HalfSpacePoint& p) {
  // Inverse of ball_to_halfspace: the same Cayley-type map with roles swapped.
  const double s = std::norm(p.z) + (p.x3 + 1.0) * (p.x3 + 1.0);
  return Vec3(2 * p.z.real() / s, 2 * p.z.imag() / s, (std::norm(p.z) + p.x3 * p.x3 - 1.0) / s);
}

cplx sphere_to_boundary(const Vec3& s) {
  const double q = (s - Vec3(0, 0, 1)).squaredNorm();
  if (q == 0.0) throw Error(ErrorCode::ChartDomain, "north pole maps to infinity");
  return cplx(2 * s.x(), 2 * s.y()) / q;
}

double laplacian_gtilde(const ChartFunction& u, const GeodesicH3& at, double h) {
  require_xi(at);
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const double ax = std::abs(at.xi);
  const double hx = h * ax, he = h / ax;
  auto U = [&](double dx, double dy, double dp, double dq) {
    return u({at.xi + cplx(dx, dy), at.eta + cplx(dp, dq)});
  };
  const double u0 = U(0, 0, 0, 0);
  const double uxp = U(hx, 0, 0, 0), uxm = U(-hx, 0, 0, 0);
  const double uyp = U(0, hx, 0, 0), uym = U(0, -hx, 0, 0);
  const double uxx = (uxp - 2 * u0 + uxm) / (hx * hx);
  const double uyy = (uyp - 2 * u0 + uym) / (hx * hx);
  const double uxy = (U(hx, hx, 0, 0) - U(hx, -hx, 0, 0) - U(-hx, hx, 0, 0) + U(-hx, -hx, 0, 0)) / (4 * hx * hx);
  const double ux = (uxp - uxm) / (2 * hx), uy = (uyp - uym) / (2 * hx);
  const double upp = (U(0, 0, he, 0) - 2 * u0 + U(0, 0, -he, 0)) / (he * he);
  const double uqq = (U(0, 0, 0, he) - 2 * u0 + U(0, 0, 0, -he)) / (he * he);
  const double upq = (U(0, 0, he, he) - U(0, 0, he, -he) - U(0, 0, -he, he) + U(0, 0, -he, -he)) / (4 * he * he);

  const cplx d_xi = 0.5 * cplx(ux, -uy);
  const cplx d2_xi = 0.25 * cplx(uxx - uyy, -2 * uxy);
  const cplx d2_eta = 0.25 * cplx(upp - uqq, -2 * upq);
  const cplx xb = std::conj(at.xi);
  return 8.0 * std::imag(d2_eta / (xb * xb) + 2.0 * at.xi * d_xi + at.xi * at.xi * d2_xi);
}

namespace {

constexpr double kSupportWidths = 8.0;

// cosh of the distance from the bump centre along the geodesic is
// A cosh(r - r0) + B sinh(r - r0); returns the r where it is smallest and
// that minimum.
std::pair<double, double> closest_approach(const GeodesicH3& g, const HalfSpacePoint& c) {
  auto ch = [&](double r) { return std::cosh(h3_distance(geodesic_point(g, r), c)); };
  double r0 = 0.0;
  double kmin = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    const double A = ch(r0);
    const double B = (ch(r0 + 1.0) - ch(r0 - 1.0)) / (2.0 * std::sinh(1.0));
    const double ratio = std::clamp(-B / A, -0.999999999999, 0.999999999999);
    r0 += std::atanh(ratio);
    kmin = std::sqrt(std::max(1.0, A * A - B * B));
    if (std::abs(ratio) < 1e-6) break;
  }
  return {r0, std::acosh(kmin)};
}

}  // namespace

double xray_h3(const H3Phantom& f, const GeodesicH3& g, const H3XrayOptions& opts) {
  require_xi(g);
  if (f.empty()) return 0.0;
  std::vector<std::pair<double, double>> windows;
  double min_width = std::numeric_limits<double>::infinity();
  for (const auto& b : f.bumps()) {
    const HalfSpacePoint c{{b.center.x(), b.center.y()}, b.center.z()};
    const auto [rc, dmin] = closest_approach(g, c);
    const double reach = kSupportWidths * b.width;
    if (dmin > reach) continue;
    windows.emplace_back(rc - reach, rc + reach);
    min_width = std::min(min_width, b.width);
  }
  std::sort(windows.begin(), windows.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, w.second);
    } else {
      merged.push_back(w);
    }
  }
  QuadratureOptions q;
  q.rel_tol = opts.tol;
  q.abs_tol = opts.tol * 1e-3;
  q.max_evaluations = opts.max_evaluations;
  q.max_initial_panel = min_width;
  double total = 0.0;
  for (const auto& [a, b] : merged) {
    total += integrate_adaptive([&](double r) { return f(geodesic_point(g, r)); }, a, b, q).value;
  }
  return total;
}

HarmonicityReport harmonicity_check(const ChartFunction& u, const std::vector<GeodesicH3>& samples,
                                    const std::vector<double>& hs, int threads) {
  if (hs.size() < 2) throw Error(ErrorCode::InvalidArgument, "harmonicity check needs at least two steps");
  HarmonicityReport rep;
  for (double h : hs) {
    std::vector<double> res(samples.size(), 0.0);
    detail::parallel_for(samples.size(), [&](std::size_t i) {
      res[i] = std::abs(laplacian_gtilde(u, samples[i], h));
    }, threads);
    double sup = 0.0;
    for (double r : res) sup = std::max(sup, r);
    rep.levels.push_back({h, sup});
  }
  double min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    const double a = rep.levels[i - 1].sup_residual, b = rep.levels[i].sup_residual;
    const double ratio = rep.levels[i - 1].h / rep.levels[i].h;
    const double order = (a > 0.0 && b > 0.0) ? std::log(a / b) / std::log(ratio)
                         : (b == 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.orders.push_back(order);
    min_order = std::min(min_order, order);
  }
  rep.consistent = rep.levels.back().sup_residual <= 1e-12 || min_order >= kMinHarmonicOrder;
  return rep;
}

HarmonicityReport harmonicity_check(const H3Phantom& f, const std::vector<GeodesicH3>& samples,
                                    const std::vector<double>& hs, const H3XrayOptions& opts, int threads) {
  return harmonicity_check([&](const GeodesicH3& g) { return xray_h3(f, g, opts); }, samples, hs, threads);
}

std::vector<GeodesicH3> sample_geodesics_near(const H3Phantom& f, int count, double spread, std::mt19937_64& rng) {
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "cannot sample near an empty phantom");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<std::size_t> pick(0, f.bumps().size() - 1);
  std::vector<GeodesicH3> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const GaussianBump& b = f.bumps()[pick(rng)];
    // A point within hyperbolic distance ~spread of the centre, then a
    // geodesic through it with random direction and random arclength offset.
    const double x3 = b.center.z() * std::exp(spread * unit(rng));
    const cplx z = cplx(b.center.x(), b.center.y()) + b.center.z() * spread * cplx(unit(rng), unit(rng));
    const double r0 = unit(rng);
    const cplx xi = std::polar(1.0 / (x3 * std::cosh(r0)), angle(rng));
    out.push_back({xi, z - std::tanh(r0) / std::conj(xi)});
  }
  return out;
}

H3ConformalPoint concoo_forward(const BoundaryPair& mu) {
  const double a1 = std::norm(mu.mu1), a2 = std::norm(mu.mu2);
  const double den = 1.0 - a1 * a2;
  if (!(den > 0.0)) throw Error(ErrorCode::ChartDomain, "concoo needs |mu1 mu2| < 1");
  const cplx m1b = std::conj(mu.mu1), m2b = std::conj(mu.mu2);
  const cplx re = (1.0 + a2) * m1b + (1.0 + a1) * m2b;
  const cplx im = (1.0 - a2) * m1b - (1.0 - a1) * m2b;
  H3ConformalPoint out;
  out.Z1 = (re + I * im) / den;
  out.Z2 = (re - I * im) / den;
  out.Omega = std::norm(1.0 + mu.mu1 * m2b) / den;
  return out;
}

BoundaryPair concoo_inverse(cplx Z1, cplx Z2) {
  const cplx A = 0.5 * (Z1 + Z2);
  const cplx B = (Z1 - Z2) / (2.0 * I);
  const cplx Ab = std::conj(A), Bb = std::conj(B);
  const double P = std::norm(A) - std::norm(B) + 2.0;
  const double am = std::norm(A - B), ap = std::norm(A + B);
  double rad = P * P - am * ap;
  if (rad < 0.0) {
    if (rad < -1e-13 * std::max(1.0, P * P)) {
      throw Error(ErrorCode::BranchFailure, "negative radicand in the inverse conformal map");
    }
    rad = 0.0;
  }
  const double root = std::sqrt(rad);
  BoundaryPair mu;
  if (P + root > 0.0) {
    // P - sqrt(rad) = am * ap / (P + sqrt(rad)) cancels the 1/|A -+ B|^2 factors.
    mu.mu1 = 0.5 * (Ab + Bb) - (Ab - Bb) * ap / (2.0 * (P + root));
    mu.mu2 = 0.5 * (Ab - Bb) - (Ab + Bb) * am / (2.0 * (P + root));
  } else {
    if (am == 0.0 || ap == 0.0) throw Error(ErrorCode::ChartDomain, "inverse conformal map is singular here");
    const double bracket = P - root;
    mu.mu1 = 0.5 * (Ab + Bb) - (Ab - Bb) / (2.0 * am) * bracket;
    mu.mu2 = 0.5 * (Ab - Bb) - (Ab + Bb) / (2.0 * ap) * bracket;
  }
  if (!(std::norm(mu.mu1) * std::norm(mu.mu2) < 1.0)) {
    throw Error(ErrorCode::ChartDomain, "inverse conformal map leaves the region |mu1 mu2| < 1");
  }
  return mu;
}

double gtilde_form(const GeodesicH3& at, cplx dxi, cplx deta) {
  const cplx x = at.xi, xb = std::conj(at.xi);
  const cplx w = dxi * dxi / (x * x) - std::conj(dxi) * std::conj(dxi) / (xb * xb) + xb * xb * deta * deta -
                 x * x * std::conj(deta) * std::conj(deta);
  return std::real(-0.25 * I * w);
}

double concoo_pullback_defect(const BoundaryPair& mu, double h) {
  // eta carries 1/conj(mu2), so the step shrinks with |mu2|.
  h *= std::min(1.0, std::abs(mu.mu2));
  if (!(h > 0.0)) throw Error(ErrorCode::ChartDomain, "pullback defect needs mu2 != 0");
  const std::array<double, 4> x0 = {mu.mu1.real(), mu.mu1.imag(), mu.mu2.real(), mu.mu2.imag()};
  auto at = [&](int k, double s) {
    std::array<double, 4> x = x0;
    x[k] += s;
    return BoundaryPair{{x[0], x[1]}, {x[2], x[3]}};
  };
  std::array<cplx, 4> dZ1, dZ2, dxi, deta;
  // Fourth-order central differences.
  const double w[4] = {-1.0 / 12, 8.0 / 12, -8.0 / 12, 1.0 / 12};
  const double off[4] = {2 * h, h, -h, -2 * h};
  for (int k = 0; k < 4; ++k) {
    dZ1[k] = dZ2[k] = dxi[k] = deta[k] = 0.0;
    for (int m = 0; m < 4; ++m) {
      const H3ConformalPoint z = concoo_forward(at(k, off[m]));
      const GeodesicH3 g = geodesic_from_mu(at(k, off[m]));
      dZ1[k] += w[m] * z.Z1 / h;
      dZ2[k] += w[m] * z.Z2 / h;
      dxi[k] += w[m] * g.xi / h;
      deta[k] += w[m] * g.eta / h;
    }
  }
  const GeodesicH3 g = geodesic_from_mu(mu);
  const double Omega = concoo_forward(mu).Omega;
  Eigen::Matrix4d Pm, Gm;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      Pm(k, l) = std::real(dZ1[k] * std::conj(dZ1[l])) - std::real(dZ2[k] * std::conj(dZ2[l]));
      Gm(k, l) = 0.5 * (gtilde_form(g, dxi[k] + dxi[l], deta[k] + deta[l]) - gtilde_form(g, dxi[k], deta[k]) -
                        gtilde_form(g, dxi[l], deta[l]));
    }
  }
  const double scale = Pm.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (Pm - kCanonicalMetricScale * Omega * Omega * Gm).cwiseAbs().maxCoeff() / scale;
}

Vec3 ball_model_point(const BoundaryPair& mu, double v) {
  if (!std::isfinite(v) || !std::isfinite(std::abs(mu.mu1)) || !std::isfinite(std::abs(mu.mu2))) {
    throw Error(ErrorCode::ChartDomain, "ball model point needs finite inputs");
  }
  const double a = 1.0 + std::norm(mu.mu1), b = 1.0 + std::norm(mu.mu2);
  const double s = std::abs(1.0 + mu.mu1 * std::conj(mu.mu2)) * std::sqrt(a * b);
  // Divide numerator and denominator by e^{|v|} to avoid overflow.
  const double e = std::exp(-2.0 * std::abs(v)), e1 = std::exp(-std::abs(v));
  const double ep = v >= 0 ? 1.0 : e, em = v >= 0 ? e : 1.0;
  const double den = 0.5 * a * b * (1.0 + e) + s * e1;
  if (!(den > 0.0)) throw Error(ErrorCode::ChartDomain, "ball model denominator vanishes");
  const cplx w = (mu.mu2 * a * ep - mu.mu1 * b * em) / den;
  const double x3 = (a * (2.0 - b) * ep - b * (2.0 - a) * em) / (2.0 * den);
  return Vec3(w.real(), w.imag(), x3);
}

GeodesicApproach geodesic_min_distance(const GeodesicH3& a, const GeodesicH3& b, double window, int grid) {
  require_xi(a);
  require_xi(b);
  if (grid < 2 || !(window > 0.0)) throw Error(ErrorCode::InvalidArgument, "bad search window");
  // cosh d - 1, smooth and zero exactly at intersections.
  auto F = [&](const Eigen::Vector2d& x) {
    const HalfSpacePoint p = geodesic_point(a, x[0]), q = geodesic_point(b, x[1]);
    return (std::norm(p.z - q.z) + (p.x3 - q.x3) * (p.x3 - q.x3)) / (2.0 * p.x3 * q.x3);
  };
  const double step = 2.0 * window / (grid - 1);
  Eigen::Vector2d best(0, 0);
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Eigen::Vector2d x(-window + i * step, -window + j * step);
      const double fx = F(x);
      if (fx < fbest) {
        fbest = fx;
        best = x;
      }
    }

  std::array<Eigen::Vector2d, 3> s = {best, best + Eigen::Vector2d(step, 0), best + Eigen::Vector2d(0, step)};
  std::array<double, 3> fs = {F(s[0]), F(s[1]), F(s[2])};
  for (int it = 0; it < 4000; ++it) {
    std::array<int, 3> o = {0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int x, int y) { return fs[x] < fs[y]; });
    const int lo = o[0], mid = o[1], hi = o[2];
    if ((s[hi] - s[lo]).norm() < 1e-13 && (s[mid] - s[lo]).norm() < 1e-13) break;
    const Eigen::Vector2d c = 0.5 * (s[lo] + s[mid]);
    const Eigen::Vector2d xr = c + (c - s[hi]);
    const double fr = F(xr);
    if (fr < fs[lo]) {
      const Eigen::Vector2d xe = c + 2.0 * (c - s[hi]);
      const double fe = F(xe);
      if (fe < fr) { s[hi] = xe; fs[hi] = fe; } else { s[hi] = xr; fs[hi] = fr; }
    } else if (fr < fs[mid]) {
      s[hi] = xr;
      fs[hi] = fr;
    } else {
      const Eigen::Vector2d xc = fr < fs[hi] ? c + 0.5 * (xr - c) : c + 0.5 * (s[hi] - c);
      const double fc = F(xc);
      if (fc < std::min(fr, fs[hi])) {
        s[hi] = xc;
        fs[hi] = fc;
      } else {
        for (int k : {mid, hi}) {
          s[k] = s[lo] + 0.5 * (s[k] - s[lo]);
          fs[k] = F(s[k]);
        }
      }
    }
  }
  const int arg = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  const double fmin = std::max(0.0, std::min(fs[arg], fbest));
  const Eigen::Vector2d x = fs[arg] <= fbest ? s[arg] : best;
  return {2.0 * std::asinh(std::sqrt(0.5 * fmin)), x[0], x[1]};
}

}  // namespace xrt
