#pragma once

#include <functional>
#include <limits>

namespace xrt {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_evaluations = 200000;
  // Initial panels are no wider than this, so narrow peaks cannot slip
  // between the Kronrod nodes of a single coarse panel.
  double max_initial_panel = std::numeric_limits<double>::infinity();
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// Throws Error(QuadratureBudgetExceeded) when the requested tolerance
// max(abs_tol, rel_tol * |I|) is not met within max_evaluations.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opts = {});

// n-point trapezoid rule for a 2*pi periodic integrand on [0, 2*pi).
double integrate_periodic(const std::function<double(double)>& f, int n);

}  // namespace xrt
