#pragma once

// Oriented geodesics of H^3 in the upper half-space model.
//
// Chart (xi, eta), xi != 0:
//   z(r) = eta + tanh(r) / conj(xi),  x3(r) = 1 / (|xi| cosh r),
// with r unit-speed arclength; endpoints eta -+ 1 / conj(xi) at r -> -+inf.
//
// Boundary chart (mu1, mu2):
//   xi = 2 / (conj(mu1) + 1 / mu2),  eta = (-mu1 + 1 / conj(mu2)) / 2,
// so the geodesic runs from -mu1 to 1 / conj(mu2) on the boundary plane. In
// the ball model these are the points -S(mu1) and S(mu2), where S is the
// stereographic map used for directions in line_space.

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "xrt/line_space.hpp"
#include "xrt/phantom.hpp"

namespace xrt {

struct GeodesicH3 {
  cplx xi;
  cplx eta;
};

struct BoundaryPair {
  cplx mu1;
  cplx mu2;
};

// Throws ChartDomain when xi == 0.
HalfSpacePoint geodesic_point(const GeodesicH3& g, double r);
// (r -> -inf, r -> +inf)
std::pair<cplx, cplx> geodesic_endpoints(const GeodesicH3& g);

// Throw ChartDomain where the formulas degenerate (mu2 = 0,
// conj(mu1) + 1/mu2 = 0, or xi = 0).
GeodesicH3 geodesic_from_mu(const BoundaryPair& mu);
BoundaryPair mu_from_geodesic(const GeodesicH3& g);

double halfspace_metric_speed(const GeodesicH3& g, double r, double h);

// Ball <-> half-space isometry sending the north pole (0,0,1) to infinity.
HalfSpacePoint ball_to_halfspace(const Vec3& p);
Vec3 halfspace_to_ball(const HalfSpacePoint& p);
// Boundary versions: unit sphere <-> C u {inf}.
cplx sphere_to_boundary(const Vec3& s);

using ChartFunction = std::function<double(const GeodesicH3&)>;

// 8 Im( conj(xi)^-2 d2u/deta2 + 2 xi du/dxi + xi^2 d2u/dxi2 ), the expanded
// form of 8 Im( conj(xi)^-2 d_eta^2 u + d_xi(xi^2 d_xi u) ), with Wirtinger
// derivatives from central differences. The xi step is h |xi|, the eta step
// h / |xi|.
double laplacian_gtilde(const ChartFunction& u, const GeodesicH3& at, double h);

struct H3XrayOptions {
  double tol = 1e-13;
  int max_evaluations = 400000;
};

// Integral of f over the unit-speed geodesic.
double xray_h3(const H3Phantom& f, const GeodesicH3& g, const H3XrayOptions& opts = {});

struct HarmonicityLevel {
  double h = 0.0;
  double sup_residual = 0.0;
};

struct HarmonicityReport {
  std::vector<HarmonicityLevel> levels;
  std::vector<double> orders;
  bool consistent = false;
};

inline constexpr double kMinHarmonicOrder = 1.8;

// Sup over samples of |laplacian_gtilde| for each step in hs (decreasing).
HarmonicityReport harmonicity_check(const ChartFunction& u, const std::vector<GeodesicH3>& samples,
                                    const std::vector<double>& hs, int threads = 0);
HarmonicityReport harmonicity_check(const H3Phantom& f, const std::vector<GeodesicH3>& samples,
                                    const std::vector<double>& hs, const H3XrayOptions& opts = {},
                                    int threads = 0);

// Geodesics whose closest approach to some bump centre is within `spread`
// of it, deterministic for a given generator state.
std::vector<GeodesicH3> sample_geodesics_near(const H3Phantom& f, int count, double spread, std::mt19937_64& rng);

struct H3ConformalPoint {
  cplx Z1;
  cplx Z2;
  double Omega = 1.0;
};

// Requires |mu1 mu2| < 1 (ChartDomain otherwise).
H3ConformalPoint concoo_forward(const BoundaryPair& mu);
// Principal square-root branch. BranchFailure when the radicand is negative,
// ChartDomain when the result leaves |mu1 mu2| < 1.
BoundaryPair concoo_inverse(cplx Z1, cplx Z2);

// The displayed quadratic form in the (xi, eta) chart:
//   Re( -(i/4) (dxi^2/xi^2 - conj(dxi)^2/conj(xi)^2 + conj(xi)^2 deta^2 - xi^2 conj(deta)^2) ).
double gtilde_form(const GeodesicH3& at, cplx dxi, cplx deta);

// The pullback of dZ1 dZ1-bar - dZ2 dZ2-bar equals
// kCanonicalMetricScale * Omega^2 * gtilde_form.
inline constexpr double kCanonicalMetricScale = 4.0;

// Largest entry of |P - kCanonicalMetricScale Omega^2 G| relative to the
// largest entry of |P|, where P and G are the 4x4 Gram matrices of the two
// forms in the real coordinates of (mu1, mu2), from central differences with
// step h min(1, |mu2|).
double concoo_pullback_defect(const BoundaryPair& mu, double h = 1e-4);

// Point of the geodesic (mu1, mu2) in the unit ball, v in R.
Vec3 ball_model_point(const BoundaryPair& mu, double v);

// inf over (r, r') of the hyperbolic distance between two geodesics, from a
// coarse grid search on [-window, window]^2 refined by Nelder-Mead.
struct GeodesicApproach {
  double distance = 0.0;
  double r = 0.0;
  double r_prime = 0.0;
};
GeodesicApproach geodesic_min_distance(const GeodesicH3& a, const GeodesicH3& b, double window = 10.0,
                                       int grid = 41);

}  // namespace xrt
