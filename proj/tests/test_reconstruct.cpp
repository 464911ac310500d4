#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "xrt/error.hpp"
#include "xrt/reconstruct.hpp"

using namespace xrt;
using namespace xrt::testing;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("chart on lines parallel to the horizontal plane") {
  CHECK_THROWS_AS(H0Chart(1.0), Error);
  CHECK_THROWS_AS(H0Chart(std::polar(1.0, 0.4)), Error);
  for (cplx xi0 : {cplx(0.0), cplx(0.4, 0.2), cplx(1.7, -0.5)}) {
    CAPTURE(xi0);
    const H0Chart chart(xi0);
    const LineUV g0 = uv_from_chart(chart.gamma0());
    for (double alpha : {0.0, 1.1, 2.5, 4.0, 5.9}) {
      // horizontal
      CHECK(std::abs(std::abs(chart.line(0.7, alpha, -0.3).xi) - 1.0) < 1e-12);
      // R = 0 lines meet gamma0
      for (double r : {-1.0, 0.0, 0.8}) CHECK(line_line_distance(uv_from_chart(chart.line(0.0, alpha, r)), g0) < 1e-9);
      // |d eta|^2 = dR^2 + dr^2
      const double h = 1e-6, R = 0.6, r = -0.4;
      const cplx eR = (chart.line(R + h, alpha, r).eta - chart.line(R - h, alpha, r).eta) / (2 * h);
      const cplx er = (chart.line(R, alpha, r + h).eta - chart.line(R, alpha, r - h).eta) / (2 * h);
      CHECK(std::abs(std::norm(eR) - 1.0) < 1e-9);
      CHECK(std::abs(std::norm(er) - 1.0) < 1e-9);
      CHECK(std::abs(std::real(eR * std::conj(er))) < 1e-9);
      // R is the distance from gamma0
      CHECK(line_line_distance(uv_from_chart(chart.line(0.9, alpha, 0.3)), g0) == doctest::Approx(0.9).epsilon(1e-9));
    }
  }
}

TEST_CASE("grid ingestion") {
  Phantom f({{Vec3(0.2, -0.1, 0.3), 1.0, 0.4}});
  const H0Chart chart(0.3 - 0.1 * I);
  const H0GridSpec spec = default_h0_grid(f, 16, 8, 24);
  CHECK(spec.R_max == doctest::Approx(f.reach() + 8 * f.max_width()));
  const H0DataGrid data = ingest_h0_data(f, chart, spec);
  CHECK(data.values.size() == 17u * 8u * 24u);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> ri(0, 16), aj(0, 7), rk(0, 23);
  for (int n = 0; n < 10; ++n) {
    const int i = ri(rng), j = aj(rng), k = rk(rng);
    CHECK(std::abs(data.at(i, j, k) - xray_transform(f, chart.line(spec.R(i), spec.alpha(j), spec.r(k)))) < 1e-12);
  }
  // decay towards the edge of the grid
  for (int j = 0; j < 8; ++j) CHECK(std::abs(data.at(16, j, 0)) < 1e-12);

  const H0DataGrid zero = ingest_h0_data(Phantom{}, chart, spec);
  CHECK(john_inversion(zero).value == 0.0);
  CHECK_THROWS_AS(ingest_h0_data(f, chart, default_h0_grid(f, 4, 8, 24)), Error);
}

TEST_CASE("single gaussian on the target line") {
  const double w = 0.5, amp = 1.3;
  Phantom f({{Vec3::Zero(), amp, w}});
  const ReconstructionReport rep = reconstruct(f, 0.0, 0.0, 96, 48, 96, 1);
  CHECK(rep.direct == doctest::Approx(std::sqrt(M_PI) * amp * w).epsilon(1e-10));
  CHECK(rep.reconstructed == doctest::Approx(std::sqrt(M_PI) * amp * w).epsilon(0.01));
  CHECK(rep.plane_formula == doctest::Approx(rep.direct).epsilon(0.01));
}

TEST_CASE("tilted target line and translation") {
  Phantom f({{Vec3(0.3, -0.2, 0.1), 1.0, 0.45}, {Vec3(-0.2, 0.3, -0.2), 0.6, 0.35}});
  const ReconstructionReport rep = reconstruct(f, 0.4 + 0.2 * I, 0.1 - 0.2 * I, 96, 48, 96, 1);
  CHECK(rep.rel_error < 0.02);
  CHECK(rep.plane_rel_difference < 0.01);
  CHECK(rep.translation.norm() > 0.0);
  // gamma0 through the origin after translation
  const LineUV g = uv_from_chart({0.4 + 0.2 * I, 0.1 - 0.2 * I});
  CHECK(point_line_distance(-rep.translation, g) < 1e-12);
}

TEST_CASE("target line missing the phantom") {
  Phantom f({{Vec3(1.5, 0.0, 0.0), 1.0, 0.3}});
  const ReconstructionReport rep = reconstruct(f, 0.0, 0.0, 96, 48, 96, 1);
  CHECK(rep.direct == doctest::Approx(0.3 * std::sqrt(M_PI) * std::exp(-25.0)).epsilon(1e-9));
  CHECK(std::abs(rep.reconstructed - rep.direct) < 0.02);
}

TEST_CASE("plane formula agrees with the direct value") {
  Phantom f({{Vec3(0.1, 0.2, -0.3), 0.8, 0.5}});
  const H0Chart chart(cplx(-0.5, 0.3));
  CHECK(john_plane_formula(f, chart) == doctest::Approx(xray_transform(f, chart.gamma0())).epsilon(0.01));
}
