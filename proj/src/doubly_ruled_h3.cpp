#include "xrt/doubly_ruled_h3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"
#include "xrt/error.hpp"

namespace xrt {

const char* to_string(H3Model model) noexcept {
  return model == H3Model::Ball ? "ball" : "halfspace";
}

namespace {

H3Family circle_family(double r0, int samples, bool second) {
  H3Family fam;
  for (int i = 0; i < samples; ++i) {
    const double u = 2.0 * std::numbers::pi * i / samples;
    const cplx z = std::polar(r0, u);
    const BoundaryPair mu = second ? concoo_inverse(0.0, z) : concoo_inverse(z, 0.0);
    fam.params.push_back(u);
    fam.mu.push_back(mu);
    fam.geodesics.push_back(geodesic_from_mu(mu));
  }
  return fam;
}

Vec3 sphere_point(cplx mu) {
  // The stereographic map S of line_space.
  return direction_from_xi(mu);
}

}  // namespace

std::pair<H3Family, H3Family> h3_circle_families(double r0, int samples, double r0_perp) {
  if (!(r0 > 0.0) || samples < 2) throw Error(ErrorCode::InvalidArgument, "need r0 > 0 and at least 2 samples");
  return {circle_family(r0, samples, false), circle_family(r0_perp > 0.0 ? r0_perp : r0, samples, true)};
}

TriangleMesh h3_ruled_mesh(const H3Family& a, const H3Family& b, H3Model model, int samples_r, double half_length) {
  if (samples_r < 2) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 2 samples along each geodesic");
  TriangleMesh mesh;
  for (const H3Family* fam : {&a, &b}) {
    TriangleMesh part;
    const int su = static_cast<int>(fam->mu.size());
    for (int i = 0; i < su; ++i) {
      for (int j = 0; j < samples_r; ++j) {
        const double s = -half_length + 2.0 * half_length * j / (samples_r - 1);
        if (model == H3Model::Ball) {
          part.vertices.push_back(ball_model_point(fam->mu[i], s));
        } else {
          const HalfSpacePoint p = geodesic_point(fam->geodesics[i], s);
          part.vertices.emplace_back(p.z.real(), p.z.imag(), p.x3);
        }
      }
    }
    for (int i = 0; i < su; ++i) {
      const int i1 = (i + 1) % su;
      for (int j = 0; j + 1 < samples_r; ++j) {
        const int p = i * samples_r + j, q = i1 * samples_r + j;
        part.faces.push_back({p, q, q + 1});
        part.faces.push_back({p, q + 1, p + 1});
      }
    }
    mesh.append(part);
  }
  return mesh;
}

H3PairTable h3_pair_distances(const H3Family& a, const H3Family& b, bool same_family, double threshold, int threads) {
  const int n = static_cast<int>(a.geodesics.size());
  if (static_cast<int>(b.geodesics.size()) != n) throw Error(ErrorCode::InvalidArgument, "families differ in size");
  H3PairTable t;
  t.n = n;
  t.threshold = threshold;
  t.distance.assign(static_cast<std::size_t>(n) * n, 0.0);
  detail::parallel_for(t.distance.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k / n), j = static_cast<int>(k % n);
    if (same_family && i == j) return;
    t.distance[k] = geodesic_min_distance(a.geodesics[i], b.geodesics[j]).distance;
  }, threads);
  t.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t.distance.size(); ++k) {
    if (same_family && k / n == k % n) continue;
    t.max_distance = std::max(t.max_distance, t.distance[k]);
    t.min_distance = std::min(t.min_distance, t.distance[k]);
    if (t.distance[k] < threshold) ++t.pairs_below;
  }
  return t;
}

double klein_coplanarity_defect(const H3Family& a, const H3Family& b) {
  // Klein chords join the ball-model endpoints -S(mu1) and S(mu2).
  auto chord = [](const BoundaryPair& mu) {
    const Vec3 p = -sphere_point(mu.mu1), q = sphere_point(mu.mu2);
    LineUV l;
    l.U = (q - p).normalized();
    l.V = p - p.dot(l.U) * l.U;
    return l;
  };
  double worst = 0.0;
  for (const auto& ma : a.mu)
    for (const auto& mb : b.mu) {
      const LineUV la = chord(ma), lb = chord(mb);
      if (la.U.cross(lb.U).norm() < 1e-9) continue;  // parallel chords are coplanar
      worst = std::max(worst, line_line_distance(la, lb));
    }
  return worst;
}

double h3_branch_limit(int samples, double r_hi) {
  auto ok = [&](double r0) {
    try {
      h3_circle_families(r0, samples);
      return true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BranchFailure || e.code() == ErrorCode::ChartDomain) return false;
      throw;
    }
  };
  if (ok(r_hi)) return r_hi;
  double lo = 0.0, hi = r_hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid > 0.0 && ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

DoublyRuledH3Result doubly_ruled_h3(double r0, H3Model model, int samples, int samples_r, double half_length) {
  auto [a, b] = h3_circle_families(r0, samples);
  DoublyRuledH3Result out{a, b, {}};
  out.mesh = h3_ruled_mesh(out.first, out.second, model, samples_r, half_length);
  return out;
}

}  // namespace xrt
