#pragma once

// Geodesic families of the circles Z1 = r0 e^{iu}, Z2 = 0 and
// Z1 = 0, Z2 = r0 e^{iu} in the conformal coordinates of L(H^3).

#include <vector>

#include "xrt/hyperbolic.hpp"
#include "xrt/mesh.hpp"

namespace xrt {

enum class H3Model { HalfSpace, Ball };

const char* to_string(H3Model model) noexcept;

struct H3Family {
  std::vector<double> params;
  std::vector<BoundaryPair> mu;
  std::vector<GeodesicH3> geodesics;
};

// samples equally spaced u in [0, 2 pi). r0_perp, when positive, sets the
// radius of the second circle. Throws BranchFailure outside the branch range.
std::pair<H3Family, H3Family> h3_circle_families(double r0, int samples, double r0_perp = 0.0);

// Each geodesic sampled at samples_r parameter values in [-half_length,
// half_length] (arclength r in the half-space model, v in the ball model),
// triangulated strip by strip around each family.
TriangleMesh h3_ruled_mesh(const H3Family& a, const H3Family& b, H3Model model, int samples_r, double half_length);

struct H3PairTable {
  int n = 0;
  std::vector<double> distance;  // n x n, row = first family
  double max_distance = 0.0;
  double min_distance = 0.0;
  int pairs_below = 0;           // pairs with distance < threshold
  double threshold = 1e-4;
};

// Minimal hyperbolic distance for every pair (numerical 2D minimisation).
// same_family skips the diagonal.
H3PairTable h3_pair_distances(const H3Family& a, const H3Family& b, bool same_family = false,
                              double threshold = 1e-4, int threads = 0);

// Largest 3D distance between the lines extending the Klein-model chords of
// cross-family geodesics. Zero means each pair spans a totally geodesic plane.
double klein_coplanarity_defect(const H3Family& a, const H3Family& b);

// Largest r0 in (0, r_hi] for which both circles invert on the principal
// branch at `samples` points, by bisection.
double h3_branch_limit(int samples, double r_hi = 8.0);

struct DoublyRuledH3Result {
  H3Family first;
  H3Family second;
  TriangleMesh mesh;
};

DoublyRuledH3Result doubly_ruled_h3(double r0, H3Model model, int samples, int samples_r = 40,
                                    double half_length = 4.0);

}  // namespace xrt
