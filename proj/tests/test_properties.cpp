// Randomised invariants, seeded so failures reproduce.
#include <doctest.h>

#include "support.hpp"
#include "xrt/hyperbolic.hpp"
#include "xrt/meanvalue_ruled.hpp"
#include "xrt/topology.hpp"
#include "xrt/xray_flat.hpp"

using namespace xrt;
using namespace xrt::testing;

TEST_CASE("chart and conformal round trips") {
  std::mt19937_64 rng(101);
  double uv_err = 0.0, conf_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const OrientedLine l = random_line(rng);
    const OrientedLine a = chart_from_uv(uv_from_chart(l));
    uv_err = std::max({uv_err, std::abs(a.xi - l.xi), std::abs(a.eta - l.eta)});
    const OrientedLine b = from_conformal(to_conformal(l));
    conf_err = std::max({conf_err, std::abs(b.xi - l.xi), std::abs(b.eta - l.eta)});
  }
  CHECK(uv_err < 1e-10);
  CHECK(conf_err < 1e-10);
}

TEST_CASE("eta is constant along lines") {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (int i = 0; i < 50; ++i) {
    const OrientedLine l = random_line(rng);
    const LineUV uv = uv_from_chart(l);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) worst = std::max(worst, std::abs(eta_from_point(uv.V + t(rng) * uv.U, l.xi) - l.eta));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("null separation matches incidence") {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> pick(0, 2);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 pa = random_point(rng), da = random_upper_direction(rng);
    Vec3 pb = random_point(rng), db = random_upper_direction(rng);
    const int kind = pick(rng);
    if (kind == 0) pb = pa + 0.7 * da;  // meet at pa
    if (kind == 1) db = da;             // parallel
    const LinePairOracle o = line_pair_oracle(pa, da, pb, db);
    const PairClass pc = classify_pair(line_through(pa, da), line_through(pb, db));
    PairTag expect = PairTag::Intersecting;
    if (o.kind == Incidence::Parallel) expect = PairTag::Parallel;
    if (o.kind == Incidence::Skew) expect = o.orientation > 0 ? PairTag::SkewPositive : PairTag::SkewNegative;
    if (pc.tag != expect) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("fibre distance is the 3D distance") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 200; ++i) {
    const OrientedLine a = random_line(rng);
    const OrientedLine b{a.xi, random_eta(rng)};
    CHECK(std::abs(fibre_distance(a, b) - line_line_distance(uv_from_chart(a), uv_from_chart(b))) < 1e-10);
  }
}

TEST_CASE("X-ray transform equivariance and linearity") {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int i = 0; i < 40; ++i) {
    const Phantom f = random_phantom(rng), g = random_phantom(rng, 2);
    const Vec3 p = random_point(rng, 0.5), d = random_upper_direction(rng);
    const OrientedLine l = line_through(p, d);
    const double base = xray_transform(f, l);
    const Vec3 t = random_point(rng);
    CHECK(std::abs(xray_transform(f.translated(t), line_through(p + t, d)) - base) < 1e-10);
    const double a = ang(rng);
    const Eigen::Matrix3d R = Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix();
    CHECK(std::abs(xray_transform(f.rotated_about_x3(a), line_through(R * p, R * d)) - base) < 1e-10);
    std::vector<GaussianBump> both = f.bumps();
    both.insert(both.end(), g.bumps().begin(), g.bumps().end());
    CHECK(std::abs(xray_transform(Phantom(both), l) - base - xray_transform(g, l)) < 1e-12);
  }
}

TEST_CASE("grid sweeps do not depend on the worker count") {
  std::mt19937_64 rng(106);
  const Phantom f = random_phantom(rng);
  const XGrid g{ConformalPoint{}, 0.5, 5};
  const Grid4 one = u_on_grid(f, g, {}, 1), many = u_on_grid(f, g, {}, 7);
  CHECK(one.values == many.values);
}

TEST_CASE("mean value identity for random circles") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> c(-1.0, 1.0), rr(0.1, 2.0);
  const Phantom f = random_phantom(rng);
  auto u = [&](const ConformalPoint& p) { return uhe_solution(f, p, {.tol = 1e-13}); };
  for (int i = 0; i < 20; ++i) {
    const auto m = asgeirsson_check(u, c(rng), c(rng), c(rng), c(rng), rr(rng), 256);
    CHECK(std::abs(m.lhs - m.rhs) < 1e-8);
  }
}

TEST_CASE("hyperbolic chart round trips") {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> rad(0.05, 0.95), ang(0.0, 2 * M_PI);
  for (int i = 0; i < 1000; ++i) {
    const BoundaryPair mu{std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng))};
    const BoundaryPair a = mu_from_geodesic(geodesic_from_mu(mu));
    CHECK(std::abs(a.mu1 - mu.mu1) + std::abs(a.mu2 - mu.mu2) < 1e-10);
    const H3ConformalPoint z = concoo_forward(mu);
    const BoundaryPair b = concoo_inverse(z.Z1, z.Z2);
    CHECK(std::abs(b.mu1 - mu.mu1) + std::abs(b.mu2 - mu.mu2) < 1e-9);
  }
}

TEST_CASE("both congruences are evaluated independently") {
  for (int b1 = 0; b1 < 4; ++b1) {
    for (int bp = 0; bp < 8; ++bp) {
      for (int bm = 0; bm < 8; ++bm) {
        const auto es = euler_signature({b1, bp, bm});
        const auto rep = neutral_admissible(es.chi, es.tau, true);
        CHECK(rep.chi_plus_tau_ok == (((es.chi + es.tau) % 4 + 4) % 4 == 0));
        CHECK(rep.chi_minus_tau_ok == (((es.chi - es.tau) % 4 + 4) % 4 == 0));
        CHECK((rep.verdict == NeutralVerdict::Admissible) == (rep.chi_plus_tau_ok && rep.chi_minus_tau_ok));
      }
    }
  }
}
