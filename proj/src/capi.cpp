#include "xrt/xrt.h"

#include <memory>
#include <new>
#include <random>
#include <string>
#include <variant>

#include "xrt/doubly_ruled_h3.hpp"
#include "xrt/error.hpp"
#include "xrt/hyperbolic.hpp"
#include "xrt/meanvalue_ruled.hpp"
#include "xrt/quadric_fit.hpp"
#include "xrt/reconstruct.hpp"
#include "xrt/topology.hpp"
#include "xrt/xray_flat.hpp"

struct xrt_phantom {
  xrt::AnyPhantom value;
};

struct xrt_grid4 {
  xrt::XGrid grid;
  xrt::Grid4 data;
};

struct xrt_mesh {
  xrt::TriangleMesh mesh;
};

namespace {

thread_local std::string g_last_error;

xrt_status map_code(xrt::ErrorCode c) {
  switch (c) {
    case xrt::ErrorCode::InvalidArgument: return XRT_ERR_INVALID_ARGUMENT;
    case xrt::ErrorCode::ChartDomain: return XRT_ERR_CHART_DOMAIN;
    case xrt::ErrorCode::NotSameFibre: return XRT_ERR_NOT_SAME_FIBRE;
    case xrt::ErrorCode::DegenerateSpec: return XRT_ERR_DEGENERATE_SPEC;
    case xrt::ErrorCode::QuadratureBudgetExceeded: return XRT_ERR_QUADRATURE_BUDGET;
    case xrt::ErrorCode::GridTooSmall: return XRT_ERR_GRID_TOO_SMALL;
    case xrt::ErrorCode::NonDecayingIntegrand: return XRT_ERR_NON_DECAYING;
    case xrt::ErrorCode::BranchFailure: return XRT_ERR_BRANCH_FAILURE;
    case xrt::ErrorCode::SingularQuadratureFailure: return XRT_ERR_SINGULAR_QUADRATURE;
    case xrt::ErrorCode::InvalidBetti: return XRT_ERR_INVALID_BETTI;
    case xrt::ErrorCode::Parse: return XRT_ERR_PARSE;
    case xrt::ErrorCode::Io: return XRT_ERR_IO;
  }
  return XRT_ERR_INTERNAL;
}

template <class Fn>
xrt_status guard(Fn&& fn) {
  try {
    fn();
    return XRT_OK;
  } catch (const xrt::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return XRT_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw xrt::Error(xrt::ErrorCode::InvalidArgument, what);
}

xrt::OrientedLine to_line(xrt_line l) { return {{l.xi_re, l.xi_im}, {l.eta_re, l.eta_im}}; }
xrt_line from_line(const xrt::OrientedLine& l) { return {l.xi.real(), l.xi.imag(), l.eta.real(), l.eta.imag()}; }
xrt::Vec3 to_vec(xrt_vec3 v) { return {v.x, v.y, v.z}; }
xrt_vec3 from_vec(const xrt::Vec3& v) { return {v.x(), v.y(), v.z()}; }
xrt::ConformalPoint to_conf(xrt_conformal p) { return xrt::ConformalPoint::from_real({p.x[0], p.x[1], p.x[2], p.x[3]}); }
xrt_conformal from_conf(const xrt::ConformalPoint& p) {
  const auto r = p.real();
  return {{r[0], r[1], r[2], r[3]}};
}
xrt::BoundaryPair to_mu(xrt_mu m) { return {{m.mu1_re, m.mu1_im}, {m.mu2_re, m.mu2_im}}; }

const xrt::Phantom& flat(const xrt_phantom* p) {
  require(p != nullptr, "phantom handle is null");
  const auto* f = std::get_if<xrt::Phantom>(&p->value);
  require(f != nullptr, "expected a flat (R^3) phantom");
  return *f;
}

const xrt::H3Phantom& hyperbolic(const xrt_phantom* p) {
  require(p != nullptr, "phantom handle is null");
  const auto* f = std::get_if<xrt::H3Phantom>(&p->value);
  require(f != nullptr, "expected a half-space phantom");
  return *f;
}

xrt::ConjugateConicPair to_pair(const xrt_conic_pair* p) {
  require(p != nullptr, "conic pair is null");
  require(p->kind >= 0 && p->kind <= 2, "unknown conic kind");
  xrt::ConjugateConicPair out;
  out.kind = static_cast<xrt::ConicKind>(p->kind);
  out.r0 = p->r0;
  out.center = to_conf(p->center);
  out.delta = p->delta;
  if (p->r0_perp > 0.0) out.r0_perp = p->r0_perp;
  return out;
}

void fill_report(xrt_convergence_report* out, const std::vector<double>& hs, const std::vector<double>& res,
                 const std::vector<double>& orders, bool consistent) {
  *out = {};
  out->levels = static_cast<int>(hs.size());
  for (std::size_t i = 0; i < hs.size() && i < XRT_MAX_LEVELS; ++i) {
    out->h[i] = hs[i];
    out->sup_residual[i] = res[i];
  }
  for (std::size_t i = 0; i < orders.size() && i < XRT_MAX_LEVELS; ++i) out->orders[i] = orders[i];
  out->consistent = consistent ? 1 : 0;
}

}  // namespace

extern "C" {

const char* xrt_status_string(xrt_status s) {
  switch (s) {
    case XRT_OK: return "ok";
    case XRT_ERR_INTERNAL: return "internal error";
    default: break;
  }
  if (s >= XRT_ERR_INVALID_ARGUMENT && s <= XRT_ERR_IO) {
    return xrt::to_string(static_cast<xrt::ErrorCode>(static_cast<int>(s) - 1));
  }
  return "unknown status";
}

const char* xrt_last_error(void) { return g_last_error.c_str(); }

const char* xrt_version(void) { return "1.0.0"; }

xrt_status xrt_uv_from_chart(xrt_line line, xrt_vec3* U, xrt_vec3* V) {
  return guard([&] {
    require(U && V, "null output");
    const auto uv = xrt::uv_from_chart(to_line(line));
    *U = from_vec(uv.U);
    *V = from_vec(uv.V);
  });
}

xrt_status xrt_chart_from_uv(xrt_vec3 U, xrt_vec3 V, xrt_line* out) {
  return guard([&] {
    require(out, "null output");
    *out = from_line(xrt::chart_from_uv({to_vec(U), to_vec(V)}));
  });
}

xrt_status xrt_to_conformal(xrt_line line, xrt_conformal* out) {
  return guard([&] {
    require(out, "null output");
    *out = from_conf(xrt::to_conformal(to_line(line)));
  });
}

xrt_status xrt_from_conformal(xrt_conformal p, xrt_line* out) {
  return guard([&] {
    require(out, "null output");
    *out = from_line(xrt::from_conformal(to_conf(p)));
  });
}

xrt_status xrt_neutral_distance(xrt_line a, xrt_line b, double* Q) {
  return guard([&] {
    require(Q, "null output");
    *Q = xrt::neutral_distance(to_line(a), to_line(b));
  });
}

xrt_status xrt_classify_pair(xrt_line a, xrt_line b, double tol, int* tag, double* Q, xrt_vec3* witness) {
  return guard([&] {
    require(tag, "null output");
    const auto pc = xrt::classify_pair(to_line(a), to_line(b), tol > 0.0 ? tol : xrt::kTolNull);
    *tag = static_cast<int>(pc.tag);
    if (Q) *Q = pc.Q;
    if (witness) {
      if (pc.intersection) *witness = from_vec(*pc.intersection);
      else if (pc.common_direction) *witness = from_vec(*pc.common_direction);
      else *witness = {0, 0, 0};
    }
  });
}

xrt_status xrt_fibre_distance(xrt_line a, xrt_line b, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = xrt::fibre_distance(to_line(a), to_line(b));
  });
}

const char* xrt_pair_tag_string(int tag) {
  switch (tag) {
    case XRT_PAIR_INTERSECTING: return "Intersecting";
    case XRT_PAIR_PARALLEL: return "Parallel";
    case XRT_PAIR_SKEW_POSITIVE: return "SkewPositive";
    case XRT_PAIR_SKEW_NEGATIVE: return "SkewNegative";
    default: return "unknown";
  }
}

xrt_status xrt_phantom_create(int halfspace, xrt_phantom** out) {
  return guard([&] {
    require(out, "null output");
    *out = halfspace ? new xrt_phantom{xrt::H3Phantom{}} : new xrt_phantom{xrt::Phantom{}};
  });
}

xrt_status xrt_phantom_from_json(const char* text, xrt_phantom** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new xrt_phantom{xrt::parse_phantom_json(text)};
  });
}

xrt_status xrt_phantom_load(const char* path, xrt_phantom** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new xrt_phantom{xrt::load_phantom_file(path)};
  });
}

void xrt_phantom_destroy(xrt_phantom* p) { delete p; }

xrt_status xrt_phantom_add_bump(xrt_phantom* p, xrt_vec3 center, double amplitude, double width) {
  return guard([&] {
    require(p, "phantom handle is null");
    const xrt::GaussianBump b{to_vec(center), amplitude, width};
    std::visit([&](auto& f) { f.add(b); }, p->value);
  });
}

int xrt_phantom_is_halfspace(const xrt_phantom* p) {
  return p && std::holds_alternative<xrt::H3Phantom>(p->value) ? 1 : 0;
}

size_t xrt_phantom_bump_count(const xrt_phantom* p) {
  if (!p) return 0;
  return std::visit([](const auto& f) { return f.bumps().size(); }, p->value);
}

xrt_status xrt_phantom_eval(const xrt_phantom* p, xrt_vec3 x, double* out) {
  return guard([&] {
    require(p && out, "null argument");
    if (const auto* f = std::get_if<xrt::Phantom>(&p->value)) {
      *out = (*f)(to_vec(x));
    } else {
      require(x.z > 0.0, "half-space points need x3 > 0");
      *out = std::get<xrt::H3Phantom>(p->value)({{x.x, x.y}, x.z});
    }
  });
}

xrt_status xrt_xray(const xrt_phantom* f, xrt_line line, double tol, double* out) {
  return guard([&] {
    require(out, "null output");
    xrt::XrayOptions o;
    if (tol > 0.0) o.tol = tol;
    *out = xrt::xray_transform(flat(f), to_line(line), o);
  });
}

xrt_status xrt_u_on_grid(const xrt_phantom* f, xrt_conformal center, double h, int points, double tol, int threads,
                         xrt_grid4** out) {
  return guard([&] {
    require(out, "null output");
    require(h > 0.0 && points >= 5, "grid needs h > 0 and at least 5 points");
    xrt::XGrid grid{to_conf(center), 0.5 * h * (points - 1), points};
    xrt::XrayOptions o;
    if (tol > 0.0) o.tol = tol;
    auto g = std::make_unique<xrt_grid4>();
    g->grid = grid;
    g->data = xrt::u_on_grid(flat(f), grid, o, threads);
    *out = g.release();
  });
}

void xrt_grid4_destroy(xrt_grid4* g) { delete g; }
size_t xrt_grid4_size(const xrt_grid4* g) { return g ? g->data.values.size() : 0; }
int xrt_grid4_points(const xrt_grid4* g) { return g ? g->data.n : 0; }

xrt_status xrt_grid4_get(const xrt_grid4* g, size_t index, xrt_conformal* X, double* value, int* valid) {
  return guard([&] {
    require(g, "grid handle is null");
    require(index < g->data.values.size(), "grid index out of range");
    if (X) *X = from_conf(g->grid.point(g->grid.unflatten(index)));
    if (value) *value = g->data.values[index];
    if (valid) *valid = g->data.valid[index];
  });
}

xrt_status xrt_uhe_check(const xrt_phantom* f, xrt_conformal center, double h, int points, int levels, int threads,
                         xrt_convergence_report* out) {
  return guard([&] {
    require(out, "null output");
    require(h > 0.0, "h must be positive");
    require(levels >= 2 && levels <= XRT_MAX_LEVELS, "levels out of range");
    xrt::XGrid grid{to_conf(center), 0.5 * h * (points - 1), points};
    const auto rep = xrt::verify_xray_uhe(flat(f), grid, levels, {.tol = 1e-13}, threads);
    std::vector<double> hs, res;
    for (const auto& l : rep.levels) {
      hs.push_back(l.h);
      res.push_back(l.sup_residual);
    }
    fill_report(out, hs, res, rep.orders, rep.consistent);
  });
}

xrt_status xrt_asgeirsson(const xrt_phantom* f, const double abcd[4], double r, int n, double* lhs, double* rhs) {
  return guard([&] {
    require(abcd && lhs && rhs, "null argument");
    const xrt::Phantom& g = flat(f);
    const auto m = xrt::asgeirsson_check([&](const xrt::ConformalPoint& p) { return xrt::uhe_solution(g, p); },
                                         abcd[0], abcd[1], abcd[2], abcd[3], r, n);
    *lhs = m.lhs;
    *rhs = m.rhs;
  });
}

xrt_status xrt_conic_integrals(const xrt_phantom* f, const xrt_conic_pair* pair, int n, xrt_conic_result* out) {
  return guard([&] {
    require(out, "null output");
    const xrt::Phantom& g = flat(f);
    xrt::ConicOptions o;
    if (n > 0) o.n = n;
    const auto r = xrt::conic_pair_integrals([&](const xrt::ConformalPoint& p) { return xrt::uhe_solution(g, p); },
                                             to_pair(pair), o);
    *out = {r.on_s, r.on_s_perp, r.window, r.tail, r.change};
  });
}

xrt_status xrt_conic_nullity(const xrt_conic_pair* pair, int samples, double window, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = xrt::conic_nullity(to_pair(pair), samples, window);
  });
}

const char* xrt_conic_kind_string(int kind) {
  if (kind < 0 || kind > 2) return "unknown";
  return xrt::to_string(static_cast<xrt::ConicKind>(kind));
}

void xrt_mesh_destroy(xrt_mesh* m) { delete m; }
size_t xrt_mesh_vertex_count(const xrt_mesh* m) { return m ? m->mesh.vertices.size() : 0; }
size_t xrt_mesh_face_count(const xrt_mesh* m) { return m ? m->mesh.faces.size() : 0; }

xrt_status xrt_mesh_vertex(const xrt_mesh* m, size_t i, xrt_vec3* out) {
  return guard([&] {
    require(m && out, "null argument");
    require(i < m->mesh.vertices.size(), "vertex index out of range");
    *out = from_vec(m->mesh.vertices[i]);
  });
}

xrt_status xrt_mesh_write_obj(const xrt_mesh* m, const char* path) {
  return guard([&] {
    require(m && path, "null argument");
    xrt::write_obj(m->mesh, path);
  });
}

xrt_status xrt_ruled(const xrt_conic_pair* pair, int m, int samples_u, int samples_r, double half_length,
                     double window, xrt_ruled_report* out, xrt_mesh** mesh) {
  return guard([&] {
    require(out, "null output");
    const auto [a, b] = xrt::lines_from_conic(to_pair(pair), window > 0.0 ? window : 2.0);
    *out = {};
    const auto cross = xrt::double_ruling_check(a, b, m);
    out->max_distance = cross.max_distance;
    out->parallel_pairs = cross.parallel_pairs;
    out->min_same_family = xrt::double_ruling_check(a, a, m, true).min_distance;
    auto built = std::make_unique<xrt_mesh>();
    built->mesh = xrt::ruled_surface_mesh(a, b, samples_u, samples_r, half_length);
    const auto fit = xrt::fit_quadric(built->mesh.vertices);
    out->quadric_kind = static_cast<int>(fit.kind);
    for (int i = 0; i < 3; ++i) out->quadric_eigenvalues[i] = fit.eigenvalues[i];
    for (int i = 0; i < 10; ++i) out->quadric_coeffs[i] = fit.coeffs[i];
    out->quadric_residual = xrt::max_algebraic_residual(fit, built->mesh.vertices);
    if (mesh) *mesh = built.release();
  });
}

const char* xrt_quadric_kind_string(int kind) {
  if (kind < 0 || kind > static_cast<int>(xrt::QuadricKind::Degenerate)) return "unknown";
  return xrt::to_string(static_cast<xrt::QuadricKind>(kind));
}

xrt_status xrt_h3_harmonicity(const xrt_phantom* f, int samples, double spread, unsigned long long seed,
                              const double* hs, int n_h, int threads, xrt_convergence_report* out) {
  return guard([&] {
    require(out && hs, "null argument");
    require(samples >= 1 && n_h >= 2 && n_h <= XRT_MAX_LEVELS, "bad sample or step count");
    const xrt::H3Phantom& g = hyperbolic(f);
    std::mt19937_64 rng(seed);
    const auto geodesics = xrt::sample_geodesics_near(g, samples, spread, rng);
    const auto rep = xrt::harmonicity_check(g, geodesics, std::vector<double>(hs, hs + n_h), {}, threads);
    std::vector<double> h, res;
    for (const auto& l : rep.levels) {
      h.push_back(l.h);
      res.push_back(l.sup_residual);
    }
    fill_report(out, h, res, rep.orders, rep.consistent);
  });
}

xrt_status xrt_h3_xray(const xrt_phantom* f, xrt_line geodesic, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = xrt::xray_h3(hyperbolic(f), {{geodesic.xi_re, geodesic.xi_im}, {geodesic.eta_re, geodesic.eta_im}});
  });
}

xrt_status xrt_mu_to_chart(xrt_mu mu, xrt_line* out) {
  return guard([&] {
    require(out, "null output");
    const auto g = xrt::geodesic_from_mu(to_mu(mu));
    *out = {g.xi.real(), g.xi.imag(), g.eta.real(), g.eta.imag()};
  });
}

xrt_status xrt_chart_to_mu(xrt_line g, xrt_mu* out) {
  return guard([&] {
    require(out, "null output");
    const auto m = xrt::mu_from_geodesic({{g.xi_re, g.xi_im}, {g.eta_re, g.eta_im}});
    *out = {m.mu1.real(), m.mu1.imag(), m.mu2.real(), m.mu2.imag()};
  });
}

xrt_status xrt_concoo_forward(xrt_mu mu, xrt_conformal* Z, double* Omega) {
  return guard([&] {
    require(Z, "null output");
    const auto c = xrt::concoo_forward(to_mu(mu));
    *Z = {{c.Z1.real(), c.Z1.imag(), c.Z2.real(), c.Z2.imag()}};
    if (Omega) *Omega = c.Omega;
  });
}

xrt_status xrt_concoo_inverse(xrt_conformal Z, xrt_mu* out) {
  return guard([&] {
    require(out, "null output");
    const auto m = xrt::concoo_inverse({Z.x[0], Z.x[1]}, {Z.x[2], Z.x[3]});
    *out = {m.mu1.real(), m.mu1.imag(), m.mu2.real(), m.mu2.imag()};
  });
}

xrt_status xrt_concoo_pullback_defect(xrt_mu mu, double* out) {
  return guard([&] {
    require(out, "null output");
    *out = xrt::concoo_pullback_defect(to_mu(mu));
  });
}

xrt_status xrt_doubly_ruled_h3(double r0, double r0_perp, int model, int samples, int samples_r, double half_length,
                               xrt_h3_ruling_report* out, xrt_mesh** mesh) {
  return guard([&] {
    require(out, "null output");
    require(model == XRT_MODEL_HALFSPACE || model == XRT_MODEL_BALL, "unknown model");
    const auto m = model == XRT_MODEL_BALL ? xrt::H3Model::Ball : xrt::H3Model::HalfSpace;
    const auto [a, b] = xrt::h3_circle_families(r0, samples, r0_perp);
    const auto cross = xrt::h3_pair_distances(a, b);
    const auto same = xrt::h3_pair_distances(a, a, true);
    *out = {};
    out->r0 = r0;
    out->branch_limit = xrt::h3_branch_limit(samples);
    out->pairs = cross.n * cross.n;
    out->pairs_below = cross.pairs_below;
    out->threshold = cross.threshold;
    out->min_cross = cross.min_distance;
    out->max_cross = cross.max_distance;
    out->min_same_family = same.min_distance;
    out->klein_defect = xrt::klein_coplanarity_defect(a, b);
    if (mesh) {
      auto built = std::make_unique<xrt_mesh>();
      built->mesh = xrt::h3_ruled_mesh(a, b, m, samples_r, half_length);
      *mesh = built.release();
    }
  });
}

xrt_status xrt_reconstruct(const xrt_phantom* f, double xi0_re, double xi0_im, double eta0_re, double eta0_im,
                           int n_R, int n_alpha, int n_r, int levels, int threads, xrt_reconstruct_report* out) {
  return guard([&] {
    require(out, "null output");
    require(levels >= 1 && levels <= XRT_MAX_LEVELS, "levels out of range");
    const auto rep = xrt::reconstruct(flat(f), {xi0_re, xi0_im}, {eta0_re, eta0_im}, n_R, n_alpha, n_r, levels,
                                      threads);
    *out = {};
    for (int i = 0; i < 3; ++i) out->translation[i] = rep.translation[i];
    out->reconstructed = rep.reconstructed;
    out->direct = rep.direct;
    out->plane_formula = rep.plane_formula;
    out->rel_error = rep.rel_error;
    out->plane_rel_difference = rep.plane_rel_difference;
    out->monotone = rep.monotone ? 1 : 0;
    out->levels = static_cast<int>(rep.refinement.size());
    for (std::size_t i = 0; i < rep.refinement.size(); ++i) {
      const auto& l = rep.refinement[i];
      out->refinement[i] = {l.n_R, l.n_alpha, l.n_r, l.value, l.abs_error, l.rel_error};
    }
  });
}

xrt_status xrt_topology(int b1, int b_plus, int b_minus, int simply_connected, xrt_topology_report* out) {
  return guard([&] {
    require(out, "null output");
    const auto es = xrt::euler_signature({b1, b_plus, b_minus});
    const auto adm = xrt::neutral_admissible(es.chi, es.tau, simply_connected != 0);
    *out = {es.chi, es.tau, static_cast<int>(adm.verdict), adm.chi_plus_tau_ok ? 1 : 0, adm.chi_minus_tau_ok ? 1 : 0,
            static_cast<int>(xrt::paracomplex_obstruction(es.tau))};
  });
}

const char* xrt_verdict_string(int verdict) {
  if (verdict < 0 || verdict > 2) return "unknown";
  return xrt::to_string(static_cast<xrt::NeutralVerdict>(verdict));
}

const char* xrt_paracomplex_string(int verdict) {
  if (verdict < 0 || verdict > 1) return "unknown";
  return xrt::to_string(static_cast<xrt::ParacomplexVerdict>(verdict));
}

}  // extern "C"
