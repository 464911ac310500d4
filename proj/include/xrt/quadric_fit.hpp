#pragma once

#include <array>
#include <vector>

#include "xrt/line_space.hpp"

namespace xrt {

enum class QuadricKind {
  Ellipsoid,
  OneSheetHyperboloid,
  TwoSheetHyperboloid,
  EllipticParaboloid,
  HyperbolicParaboloid,
  Degenerate,
};

const char* to_string(QuadricKind kind) noexcept;

// q(x) = x^T A x + b . x + k with coefficients
// (A00, A11, A22, 2 A01, 2 A02, 2 A12, b0, b1, b2, k), unit norm.
struct QuadricFit {
  std::array<double, 10> coeffs{};
  QuadricKind kind = QuadricKind::Degenerate;
  Vec3 eigenvalues = Vec3::Zero();  // of -A / k' after centring, ascending
  double smallest_singular_value = 0.0;

  double eval(const Vec3& x) const;
};

// Total least squares fit through at least 9 points. Throws DegenerateSpec
// for too few points.
QuadricFit fit_quadric(const std::vector<Vec3>& points);

// max |q(p)| over the points, using the unit-norm coefficients.
double max_algebraic_residual(const QuadricFit& fit, const std::vector<Vec3>& points);

}  // namespace xrt
