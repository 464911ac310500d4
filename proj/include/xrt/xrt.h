/* C interface to the xrt numerical core.
 *
 * Every fallible call returns an xrt_status; on failure xrt_last_error()
 * holds a message for the calling thread until its next failing call.
 * Handles are opaque and owned by the caller once returned.
 */
#ifndef XRT_XRT_H
#define XRT_XRT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(XRT_BUILDING_LIBRARY)
#    define XRT_API __declspec(dllexport)
#  else
#    define XRT_API __declspec(dllimport)
#  endif
#else
#  define XRT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xrt_status {
  XRT_OK = 0,
  XRT_ERR_INVALID_ARGUMENT = 1,
  XRT_ERR_CHART_DOMAIN = 2,
  XRT_ERR_NOT_SAME_FIBRE = 3,
  XRT_ERR_DEGENERATE_SPEC = 4,
  XRT_ERR_QUADRATURE_BUDGET = 5,
  XRT_ERR_GRID_TOO_SMALL = 6,
  XRT_ERR_NON_DECAYING = 7,
  XRT_ERR_BRANCH_FAILURE = 8,
  XRT_ERR_SINGULAR_QUADRATURE = 9,
  XRT_ERR_INVALID_BETTI = 10,
  XRT_ERR_PARSE = 11,
  XRT_ERR_IO = 12,
  XRT_ERR_INTERNAL = 13
} xrt_status;

XRT_API const char* xrt_status_string(xrt_status status);
XRT_API const char* xrt_last_error(void);
XRT_API const char* xrt_version(void);

/* Oriented line in the (xi, eta) chart. */
typedef struct xrt_line {
  double xi_re, xi_im, eta_re, eta_im;
} xrt_line;

/* Point of R^{2,2}: Z1 = X1 + i X2, Z2 = X3 + i X4. */
typedef struct xrt_conformal {
  double x[4];
} xrt_conformal;

typedef struct xrt_vec3 {
  double x, y, z;
} xrt_vec3;

/* ---- line space ---- */

enum { XRT_PAIR_INTERSECTING = 0, XRT_PAIR_PARALLEL = 1, XRT_PAIR_SKEW_POSITIVE = 2, XRT_PAIR_SKEW_NEGATIVE = 3 };

XRT_API xrt_status xrt_uv_from_chart(xrt_line line, xrt_vec3* U, xrt_vec3* V);
XRT_API xrt_status xrt_chart_from_uv(xrt_vec3 U, xrt_vec3 V, xrt_line* out);
XRT_API xrt_status xrt_to_conformal(xrt_line line, xrt_conformal* out);
XRT_API xrt_status xrt_from_conformal(xrt_conformal p, xrt_line* out);
XRT_API xrt_status xrt_neutral_distance(xrt_line a, xrt_line b, double* Q);
/* witness: intersection point (tag INTERSECTING) or common direction (PARALLEL); may be NULL. */
XRT_API xrt_status xrt_classify_pair(xrt_line a, xrt_line b, double tol, int* tag, double* Q, xrt_vec3* witness);
XRT_API xrt_status xrt_fibre_distance(xrt_line a, xrt_line b, double* out);
XRT_API const char* xrt_pair_tag_string(int tag);

/* ---- phantoms ---- */

typedef struct xrt_phantom xrt_phantom;

XRT_API xrt_status xrt_phantom_create(int halfspace, xrt_phantom** out);
XRT_API xrt_status xrt_phantom_from_json(const char* text, xrt_phantom** out);
XRT_API xrt_status xrt_phantom_load(const char* path, xrt_phantom** out);
XRT_API void xrt_phantom_destroy(xrt_phantom* p);
XRT_API xrt_status xrt_phantom_add_bump(xrt_phantom* p, xrt_vec3 center, double amplitude, double width);
XRT_API int xrt_phantom_is_halfspace(const xrt_phantom* p);
XRT_API size_t xrt_phantom_bump_count(const xrt_phantom* p);
XRT_API xrt_status xrt_phantom_eval(const xrt_phantom* p, xrt_vec3 x, double* out);

/* ---- flat X-ray transform and the ultrahyperbolic check ---- */

/* tol <= 0 selects the default 1e-10. */
XRT_API xrt_status xrt_xray(const xrt_phantom* f, xrt_line line, double tol, double* out);

typedef struct xrt_grid4 xrt_grid4;

/* (1 - |xi|^2)/(1 + |xi|^2) times the X-ray transform on a points^4 grid of
 * spacing h centred at `center`. */
XRT_API xrt_status xrt_u_on_grid(const xrt_phantom* f, xrt_conformal center, double h, int points, double tol,
                                 int threads, xrt_grid4** out);
XRT_API void xrt_grid4_destroy(xrt_grid4* g);
XRT_API size_t xrt_grid4_size(const xrt_grid4* g);
XRT_API int xrt_grid4_points(const xrt_grid4* g);
XRT_API xrt_status xrt_grid4_get(const xrt_grid4* g, size_t index, xrt_conformal* X, double* value, int* valid);

#define XRT_MAX_LEVELS 8

typedef struct xrt_convergence_report {
  int levels;
  double h[XRT_MAX_LEVELS];
  double sup_residual[XRT_MAX_LEVELS];
  double orders[XRT_MAX_LEVELS];
  int consistent;
} xrt_convergence_report;

/* Residual of the ultrahyperbolic operator at spacings h, h/2, ... (levels). */
XRT_API xrt_status xrt_uhe_check(const xrt_phantom* f, xrt_conformal center, double h, int points, int levels,
                                 int threads, xrt_convergence_report* out);

/* ---- mean value identities and ruled surfaces ---- */

enum { XRT_CONIC_CIRCLES = 0, XRT_CONIC_HYPERBOLAE = 1, XRT_CONIC_PARABOLAE = 2 };

typedef struct xrt_conic_pair {
  int kind;
  double r0;
  xrt_conformal center;
  double delta;   /* parabola offset */
  double r0_perp; /* <= 0: same as r0 */
} xrt_conic_pair;

typedef struct xrt_conic_result {
  double on_s, on_s_perp, window, tail, change;
} xrt_conic_result;

XRT_API xrt_status xrt_asgeirsson(const xrt_phantom* f, const double abcd[4], double r, int n, double* lhs,
                                  double* rhs);
XRT_API xrt_status xrt_conic_integrals(const xrt_phantom* f, const xrt_conic_pair* pair, int n,
                                       xrt_conic_result* out);
XRT_API xrt_status xrt_conic_nullity(const xrt_conic_pair* pair, int samples, double window, double* out);
XRT_API const char* xrt_conic_kind_string(int kind);

typedef struct xrt_mesh xrt_mesh;

XRT_API void xrt_mesh_destroy(xrt_mesh* m);
XRT_API size_t xrt_mesh_vertex_count(const xrt_mesh* m);
XRT_API size_t xrt_mesh_face_count(const xrt_mesh* m);
XRT_API xrt_status xrt_mesh_vertex(const xrt_mesh* m, size_t i, xrt_vec3* out);
XRT_API xrt_status xrt_mesh_write_obj(const xrt_mesh* m, const char* path);

typedef struct xrt_ruled_report {
  double max_distance;       /* cross-family, parallel pairs count as meeting at infinity */
  int parallel_pairs;
  double min_same_family;    /* off-diagonal, first family */
  int quadric_kind;
  double quadric_eigenvalues[3];
  double quadric_coeffs[10];
  double quadric_residual;   /* max |q| over mesh vertices */
} xrt_ruled_report;

/* m x m ruling check, quadric fit and mesh (samples_u x samples_r per family).
 * mesh may be NULL. */
XRT_API xrt_status xrt_ruled(const xrt_conic_pair* pair, int m, int samples_u, int samples_r, double half_length,
                             double window, xrt_ruled_report* out, xrt_mesh** mesh);
XRT_API const char* xrt_quadric_kind_string(int kind);

/* ---- hyperbolic space ---- */

typedef struct xrt_mu {
  double mu1_re, mu1_im, mu2_re, mu2_im;
} xrt_mu;

XRT_API xrt_status xrt_h3_harmonicity(const xrt_phantom* f, int samples, double spread, unsigned long long seed,
                                      const double* hs, int n_h, int threads, xrt_convergence_report* out);
XRT_API xrt_status xrt_h3_xray(const xrt_phantom* f, xrt_line geodesic, double* out);
XRT_API xrt_status xrt_mu_to_chart(xrt_mu mu, xrt_line* out);
XRT_API xrt_status xrt_chart_to_mu(xrt_line g, xrt_mu* out);
XRT_API xrt_status xrt_concoo_forward(xrt_mu mu, xrt_conformal* Z, double* Omega);
XRT_API xrt_status xrt_concoo_inverse(xrt_conformal Z, xrt_mu* out);
XRT_API xrt_status xrt_concoo_pullback_defect(xrt_mu mu, double* out);

enum { XRT_MODEL_HALFSPACE = 0, XRT_MODEL_BALL = 1 };

typedef struct xrt_h3_ruling_report {
  double r0;
  double branch_limit;
  int pairs;
  int pairs_below;           /* cross pairs with min distance < threshold */
  double threshold;
  double min_cross;
  double max_cross;
  double min_same_family;
  double klein_defect;       /* coplanarity of cross pairs */
} xrt_h3_ruling_report;

XRT_API xrt_status xrt_doubly_ruled_h3(double r0, double r0_perp, int model, int samples, int samples_r,
                                       double half_length, xrt_h3_ruling_report* out, xrt_mesh** mesh);

/* ---- reconstruction ---- */

typedef struct xrt_refinement_level {
  int n_R, n_alpha, n_r;
  double value, abs_error, rel_error;
} xrt_refinement_level;

typedef struct xrt_reconstruct_report {
  double translation[3];
  double reconstructed;
  double direct;
  double plane_formula;
  double rel_error;
  double plane_rel_difference;
  int monotone;
  int levels;
  xrt_refinement_level refinement[XRT_MAX_LEVELS];
} xrt_reconstruct_report;

XRT_API xrt_status xrt_reconstruct(const xrt_phantom* f, double xi0_re, double xi0_im, double eta0_re,
                                   double eta0_im, int n_R, int n_alpha, int n_r, int levels, int threads,
                                   xrt_reconstruct_report* out);

/* ---- topology ---- */

enum { XRT_OBSTRUCTED = 0, XRT_ADMISSIBLE = 1, XRT_NECESSARY_CONDITIONS_HOLD = 2 };
enum { XRT_OBSTRUCTS_PARALLEL_PARACOMPLEX = 0, XRT_NOT_OBSTRUCTED = 1 };

typedef struct xrt_topology_report {
  int chi, tau;
  int verdict;
  int chi_plus_tau_ok, chi_minus_tau_ok;
  int paracomplex;
} xrt_topology_report;

XRT_API xrt_status xrt_topology(int b1, int b_plus, int b_minus, int simply_connected, xrt_topology_report* out);
XRT_API const char* xrt_verdict_string(int verdict);
XRT_API const char* xrt_paracomplex_string(int verdict);

#ifdef __cplusplus
}
#endif

#endif
