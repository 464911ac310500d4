#pragma once

#include <functional>
#include <vector>

#include "xrt/line_space.hpp"
#include "xrt/phantom.hpp"

namespace xrt {

struct XrayOptions {
  double tol = 1e-10;
  int max_evaluations = 200000;
};

// u_f(line) = integral of f over the line with respect to arclength.
double xray_transform(const Phantom& f, const OrientedLine& line, const XrayOptions& opts = {});

// U3 = (1 - |xi|^2) / (1 + |xi|^2). The product U3 * u_f is the line integral
// parameterised by x3, which is the function solving the flat
// ultrahyperbolic equation in conformal coordinates.
double john_weight(const OrientedLine& line);

// U3 * u_f at the line with conformal coordinates p.
double uhe_solution(const Phantom& f, const ConformalPoint& p, const XrayOptions& opts = {});

struct XGrid {
  ConformalPoint center{};
  double half_extent = 1.0;
  int points = 9;

  double spacing() const { return 2.0 * half_extent / (points - 1); }
  std::size_t size() const;
  ConformalPoint point(const std::array<int, 4>& idx) const;
  std::array<int, 4> unflatten(std::size_t flat) const;
};

// Dense n^4 array in row-major (X1, X2, X3, X4) order. valid[i] == 0 marks
// grid points whose line fell outside the chart.
struct Grid4 {
  int n = 0;
  std::vector<double> values;
  std::vector<unsigned char> valid;

  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }
};

using ConformalFunction = std::function<double(const ConformalPoint&)>;

// Throws InvalidArgument for grids with fewer than 5 points per axis.
Grid4 u_on_grid(const Phantom& f, const XGrid& grid, const XrayOptions& opts = {}, int threads = 0);
Grid4 sample_on_grid(const ConformalFunction& u, const XGrid& grid, int threads = 0);

// d2/dX1^2 + d2/dX2^2 - d2/dX3^2 - d2/dX4^2 by central differences on the
// (n-2)^4 interior. Throws GridTooSmall when n < 3.
Grid4 uhe_residual(const Grid4& u, double h);

// Maximum |value| over valid entries, reduced in index order.
double sup_norm(const Grid4& g);

struct UheLevel {
  double h = 0.0;
  double sup_residual = 0.0;
};

struct UheReport {
  std::vector<UheLevel> levels;
  std::vector<double> orders;  // log2 ratio between consecutive levels
  bool consistent = false;
};

inline constexpr double kMinUheOrder = 1.8;

// Residuals on `levels` grids with the same point count and extents halved
// each time. Consistent when the finest residual is at roundoff level or the
// smallest observed order is at least kMinUheOrder.
UheReport verify_xray_uhe(const Phantom& f, const XGrid& coarse, int levels = 3,
                          const XrayOptions& opts = {.tol = 1e-13}, int threads = 0);
UheReport verify_uhe(const ConformalFunction& u, const XGrid& coarse, int levels = 3, int threads = 0);

}  // namespace xrt
