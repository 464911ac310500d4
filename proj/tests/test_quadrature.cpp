#include <doctest.h>

#include <cmath>

#include "xrt/error.hpp"
#include "xrt/quadrature.hpp"

using namespace xrt;

TEST_CASE("gaussian integral over a wide window") {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(r.error < 1e-9);
}

TEST_CASE("cubic polynomials are integrated exactly on one panel") {
  const auto r = integrate_adaptive([](double x) { return 3 * x * x * x - x + 2; }, -1.0, 2.0);
  CHECK(r.value == doctest::Approx(3.0 * (16.0 - 1.0) / 4.0 - 1.5 + 6.0).epsilon(1e-14));
  CHECK(r.evaluations == 15);
}

TEST_CASE("narrow peak is found when initial panels are bounded") {
  auto peak = [](double x) { return std::exp(-(x - 3.1) * (x - 3.1) / 1e-4); };
  QuadratureOptions o;
  o.max_initial_panel = 0.05;
  const auto r = integrate_adaptive(peak, -10.0, 10.0, o);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI) * 1e-2).epsilon(1e-10));
}

TEST_CASE("budget exhaustion throws") {
  QuadratureOptions o;
  o.max_evaluations = 45;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-15;
  try {
    integrate_adaptive([](double x) { return std::sin(200 * x) * std::sin(200 * x); }, 0.0, 10.0, o);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureBudgetExceeded);
  }
}

TEST_CASE("reversed and empty intervals") {
  auto f = [](double x) { return x; };
  CHECK(integrate_adaptive(f, 1.0, 1.0).value == 0.0);
  CHECK(integrate_adaptive(f, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("periodic trapezoid is spectrally accurate") {
  CHECK(integrate_periodic([](double t) { return std::cos(t) * std::cos(t); }, 16) ==
        doctest::Approx(M_PI).epsilon(1e-15));
  const double i0 = std::cyl_bessel_i(0.0, 1.0);
  CHECK(integrate_periodic([](double t) { return std::exp(std::cos(t)); }, 32) ==
        doctest::Approx(2 * M_PI * i0).epsilon(1e-15));
}
