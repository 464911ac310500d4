#pragma once

// Recovering the X-ray transform at a line gamma0 from data on the null
// hypersurface H0 of lines parallel to the plane x3 = 0 (here |xi| = 1).
//
// H0 is charted by (R, alpha, r):
//   nu = (xi0 + e^{i alpha}) / (1 - conj(xi0) e^{i alpha}),  A = arg nu,  r0 = |nu|,
//   xi = i e^{iA},  eta = -(r - iR) ((r0 - i) / (r0 + i)) e^{iA},
// and gamma0 = (xi0, 0) passes through the origin. R is the distance of the
// line's plane from gamma0 and |d eta|^2 = dR^2 + dr^2.

#include <vector>

#include "xrt/xray_flat.hpp"

namespace xrt {

class H0Chart {
 public:
  // Throws InvalidArgument when |xi0| = 1.
  explicit H0Chart(cplx xi0);

  cplx xi0() const { return xi0_; }
  cplx nu(double alpha) const;
  double A(double alpha) const { return std::arg(nu(alpha)); }
  double r0(double alpha) const { return std::abs(nu(alpha)); }
  OrientedLine line(double R, double alpha, double r) const;
  OrientedLine gamma0() const { return {xi0_, 0.0}; }

 private:
  cplx xi0_;
};

struct H0GridSpec {
  int n_R = 96;       // intervals on [0, R_max]; R = 0 is row 0
  int n_alpha = 48;   // points on [0, 2 pi)
  int n_r = 96;       // points on [-r_max, r_max]
  double R_max = 0.0;
  double r_max = 0.0;

  double dR() const { return R_max / n_R; }
  double dr() const { return 2.0 * r_max / (n_r - 1); }
  double R(int i) const { return i * dR(); }
  double alpha(int j) const;
  double r(int k) const { return -r_max + k * dr(); }
};

struct H0DataGrid {
  H0GridSpec spec;
  std::vector<double> values;  // (n_R + 1) x n_alpha x n_r, row-major

  double& at(int i, int j, int k) {
    return values[(static_cast<std::size_t>(i) * spec.n_alpha + j) * spec.n_r + k];
  }
  double at(int i, int j, int k) const {
    return values[(static_cast<std::size_t>(i) * spec.n_alpha + j) * spec.n_r + k];
  }
};

// R_max = r_max = reach + 8 * max width (about the origin) when unset.
H0GridSpec default_h0_grid(const Phantom& f, int n_R = 96, int n_alpha = 48, int n_r = 96);

H0DataGrid ingest_h0_data(const Phantom& f, const H0Chart& chart, const H0GridSpec& spec,
                          const XrayOptions& opts = {}, int threads = 0);

// F(R_i): alpha average of the r-integral of the data.
std::vector<double> plane_averages(const H0DataGrid& data);

struct InversionDiagnostics {
  double value = 0.0;
  double richardson_spread = 0.0;  // |J(eps) - J(2 eps)| / (7 pi), error estimate
  double tail = 0.0;               // -F(0) / R_max
  double limit_row = 0.0;          // (F(R) - F(0)) / R^2 at the first nonzero R
};

// -(1/pi) int_0^inf (F(R) - F(0)) / R^2 dR. The integral over [eps, R_max]
// uses the trapezoid rule for eps = 2 dR, 4 dR, 8 dR and Richardson
// extrapolation to eps = 0; the tail beyond R_max is -F(0) / R_max. Throws
// SingularQuadratureFailure when the extrapolation error estimate exceeds
// rel_spread_tol relative to max(1, |value|).
InversionDiagnostics john_inversion(const H0DataGrid& data, double rel_spread_tol = 0.05);

// The same formula from exact Gaussian plane integrals averaged over the
// normal direction (n_alpha trapezoid points) and adaptive quadrature in R.
double john_plane_formula(const Phantom& f, const H0Chart& chart, int n_alpha = 512, double tol = 1e-10);

struct RefinementLevel {
  int n_R = 0;
  int n_alpha = 0;
  int n_r = 0;
  double value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

struct ReconstructionReport {
  cplx xi0;
  cplx eta0;
  Vec3 translation = Vec3::Zero();
  double reconstructed = 0.0;  // at the base grid
  double direct = 0.0;
  double plane_formula = 0.0;
  double rel_error = 0.0;
  double plane_rel_difference = 0.0;
  std::vector<RefinementLevel> refinement;
  bool monotone = false;
};

// Translates f so that gamma0 = (xi0, eta0) passes through the origin, then
// inverts on `levels` grids: the base grid and each refinement doubling n_R
// and n_r.
ReconstructionReport reconstruct(const Phantom& f, cplx xi0, cplx eta0, int n_R, int n_alpha, int n_r,
                                 int levels = 3, int threads = 0);

}  // namespace xrt
