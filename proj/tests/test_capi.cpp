// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "xrt/xrt.h"

namespace {

struct Phantom {
  xrt_phantom* p = nullptr;
  ~Phantom() { xrt_phantom_destroy(p); }
};

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(xrt_status_string(XRT_OK)) == "ok");
  CHECK(std::string(xrt_status_string(XRT_ERR_CHART_DOMAIN)) == "ChartDomain");
  CHECK(std::string(xrt_status_string(XRT_ERR_IO)) == "Io");
  CHECK(std::string(xrt_version()).size() > 0);
}

TEST_CASE("line charts") {
  const xrt_line l{0.3, 0.1, 1.0, -2.0};
  xrt_vec3 U{}, V{};
  REQUIRE(xrt_uv_from_chart(l, &U, &V) == XRT_OK);
  CHECK(std::abs(U.x * U.x + U.y * U.y + U.z * U.z - 1.0) < 1e-15);
  xrt_line back{};
  REQUIRE(xrt_chart_from_uv(U, V, &back) == XRT_OK);
  CHECK(std::abs(back.eta_re - 1.0) < 1e-14);
  xrt_conformal z{};
  REQUIRE(xrt_to_conformal({0, 0, 1, 0}, &z) == XRT_OK);
  CHECK(z.x[0] == doctest::Approx(2.0));
  CHECK(z.x[2] == doctest::Approx(2.0));
  REQUIRE(xrt_from_conformal(z, &back) == XRT_OK);
  CHECK(std::abs(back.eta_re - 1.0) < 1e-15);

  CHECK(xrt_to_conformal({1.0, 0, 0, 0}, &z) == XRT_ERR_CHART_DOMAIN);
  CHECK(std::string(xrt_last_error()).find("|xi|") != std::string::npos);
  CHECK(xrt_to_conformal(l, nullptr) == XRT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pair classification") {
  int tag = -1;
  double Q = 1.0;
  xrt_vec3 w{};
  REQUIRE(xrt_classify_pair({0.1, 0.2, 0.5, 0}, {0.1, 0.2, 0.5, 0.7}, 0.0, &tag, &Q, &w) == XRT_OK);
  CHECK(tag == XRT_PAIR_PARALLEL);
  CHECK(std::string(xrt_pair_tag_string(tag)) == "Parallel");
  double d = 0.0;
  REQUIRE(xrt_fibre_distance({0, 0, 0, 0}, {0, 0, 1, 0}, &d) == XRT_OK);
  CHECK(d == doctest::Approx(2.0));
  CHECK(xrt_fibre_distance({0, 0, 0, 0}, {0.5, 0, 1, 0}, &d) == XRT_ERR_NOT_SAME_FIBRE);
  REQUIRE(xrt_neutral_distance({0, 0, 0, 0}, {0, 0, 0, 0}, &Q) == XRT_OK);
  CHECK(Q == 0.0);
}

TEST_CASE("phantom handles") {
  Phantom f;
  REQUIRE(xrt_phantom_create(0, &f.p) == XRT_OK);
  CHECK(xrt_phantom_add_bump(f.p, {0, 0, 0}, 1.0, -1.0) == XRT_ERR_INVALID_ARGUMENT);
  REQUIRE(xrt_phantom_add_bump(f.p, {0, 0, 0}, 1.0, 1.0) == XRT_OK);
  CHECK(xrt_phantom_bump_count(f.p) == 1);
  CHECK(xrt_phantom_is_halfspace(f.p) == 0);
  double v = 0.0;
  REQUIRE(xrt_phantom_eval(f.p, {1, 0, 0}, &v) == XRT_OK);
  CHECK(v == doctest::Approx(std::exp(-1.0)));
  REQUIRE(xrt_xray(f.p, {0, 0, 0, 0}, 0.0, &v) == XRT_OK);
  CHECK(v == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

  Phantom bad;
  CHECK(xrt_phantom_from_json(R"({"bumps":[{"center":[0,0,0],"amplitude":1,"width":-0.5}]})", &bad.p) ==
        XRT_ERR_PARSE);
  CHECK(bad.p == nullptr);
  CHECK(std::string(xrt_last_error()).find("$.bumps[0].width") != std::string::npos);
  CHECK(xrt_phantom_load("/nonexistent/p.json", &bad.p) == XRT_ERR_IO);

  Phantom hs;
  REQUIRE(xrt_phantom_from_json(R"({"model":"halfspace","bumps":[{"center":[0,0,1],"amplitude":1,"width":0.3}]})",
                                &hs.p) == XRT_OK);
  CHECK(xrt_phantom_is_halfspace(hs.p) == 1);
  CHECK(xrt_xray(hs.p, {0, 0, 0, 0}, 0.0, &v) == XRT_ERR_INVALID_ARGUMENT);
  REQUIRE(xrt_h3_xray(hs.p, {1, 0, 0, 0}, &v) == XRT_OK);
  CHECK(v > 0.0);
  CHECK(xrt_xray(nullptr, {0, 0, 0, 0}, 0.0, &v) == XRT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("grids and the convergence report") {
  Phantom f;
  REQUIRE(xrt_phantom_from_json(R"({"bumps":[{"center":[0.3,-0.2,0.1],"amplitude":1,"width":0.5}]})", &f.p) ==
          XRT_OK);
  xrt_grid4* g = nullptr;
  REQUIRE(xrt_u_on_grid(f.p, {{0, 0, 0, 0}}, 0.2, 5, 0.0, 2, &g) == XRT_OK);
  CHECK(xrt_grid4_size(g) == 625);
  CHECK(xrt_grid4_points(g) == 5);
  xrt_conformal X{};
  double u = 0.0;
  int valid = 0;
  REQUIRE(xrt_grid4_get(g, 0, &X, &u, &valid) == XRT_OK);
  CHECK(X.x[0] == doctest::Approx(-0.4));
  CHECK(valid == 1);
  CHECK(xrt_grid4_get(g, 625, &X, &u, &valid) == XRT_ERR_INVALID_ARGUMENT);
  xrt_grid4_destroy(g);
  CHECK(xrt_u_on_grid(f.p, {{0, 0, 0, 0}}, 0.2, 3, 0.0, 2, &g) == XRT_ERR_INVALID_ARGUMENT);

  xrt_convergence_report r{};
  REQUIRE(xrt_uhe_check(f.p, {{0, 0, 0, 0}}, 0.2, 9, 3, 0, &r) == XRT_OK);
  CHECK(r.levels == 3);
  CHECK(r.consistent == 1);
  CHECK(r.orders[0] >= 1.8);
  CHECK(r.h[2] == doctest::Approx(0.05));
}

TEST_CASE("mean values and ruled surfaces") {
  Phantom f;
  REQUIRE(xrt_phantom_from_json(R"({"bumps":[{"center":[0.3,-0.2,0.1],"amplitude":1,"width":0.5}]})", &f.p) ==
          XRT_OK);
  const double abcd[4] = {0.1, 0.2, -0.3, 0.4};
  double lhs = 0, rhs = 0;
  REQUIRE(xrt_asgeirsson(f.p, abcd, 0.8, 256, &lhs, &rhs) == XRT_OK);
  CHECK(std::abs(lhs - rhs) < 1e-8);

  xrt_conic_pair pair{XRT_CONIC_HYPERBOLAE, 0.7, {{0, 0, 0, 0}}, 0.5, 0.0};
  xrt_conic_result cr{};
  REQUIRE(xrt_conic_integrals(f.p, &pair, 0, &cr) == XRT_OK);
  CHECK(std::abs(cr.on_s - cr.on_s_perp) < 1e-6);
  pair.kind = XRT_CONIC_PARABOLAE;
  double q = 1.0;
  REQUIRE(xrt_conic_nullity(&pair, 20, 3.0, &q) == XRT_OK);
  CHECK(q < 1e-9);
  pair.kind = 7;
  CHECK(xrt_conic_nullity(&pair, 20, 3.0, &q) == XRT_ERR_INVALID_ARGUMENT);

  xrt_conic_pair circles{XRT_CONIC_CIRCLES, 1.0, {{0, 0, 0, 0}}, 0.5, 0.0};
  xrt_ruled_report rr{};
  xrt_mesh* mesh = nullptr;
  REQUIRE(xrt_ruled(&circles, 20, 16, 8, 2.0, 0.0, &rr, &mesh) == XRT_OK);
  CHECK(rr.max_distance < 1e-8);
  CHECK(std::string(xrt_quadric_kind_string(rr.quadric_kind)) == "one_sheet_hyperboloid");
  CHECK(xrt_mesh_vertex_count(mesh) == 2 * 16 * 8);
  xrt_vec3 v{};
  CHECK(xrt_mesh_vertex(mesh, 0, &v) == XRT_OK);
  CHECK(xrt_mesh_write_obj(mesh, "/nonexistent/dir/x.obj") == XRT_ERR_IO);
  xrt_mesh_destroy(mesh);
}

TEST_CASE("hyperbolic space") {
  xrt_line g{};
  REQUIRE(xrt_mu_to_chart({0, 0, 1, 0}, &g) == XRT_OK);
  CHECK(g.xi_re == doctest::Approx(2.0));
  xrt_mu mu{};
  REQUIRE(xrt_chart_to_mu(g, &mu) == XRT_OK);
  CHECK(std::abs(mu.mu2_re - 1.0) < 1e-15);

  xrt_conformal Z{};
  double omega = 0;
  REQUIRE(xrt_concoo_forward({0.2, 0.1, -0.3, 0.4}, &Z, &omega) == XRT_OK);
  REQUIRE(xrt_concoo_inverse(Z, &mu) == XRT_OK);
  CHECK(mu.mu1_re == doctest::Approx(0.2).epsilon(1e-12));
  double defect = 1;
  REQUIRE(xrt_concoo_pullback_defect({0.2, 0.1, -0.3, 0.4}, &defect) == XRT_OK);
  CHECK(defect < 1e-6);

  xrt_h3_ruling_report rep{};
  xrt_mesh* mesh = nullptr;
  REQUIRE(xrt_doubly_ruled_h3(1.0, 0.0, XRT_MODEL_BALL, 12, 8, 3.0, &rep, &mesh) == XRT_OK);
  CHECK(rep.pairs == 144);
  CHECK(rep.klein_defect < 1e-9);
  CHECK(xrt_mesh_vertex_count(mesh) == 2 * 12 * 8);
  xrt_mesh_destroy(mesh);
  CHECK(xrt_doubly_ruled_h3(2.5, 0.0, XRT_MODEL_BALL, 12, 8, 3.0, &rep, nullptr) == XRT_ERR_BRANCH_FAILURE);

  Phantom hs;
  REQUIRE(xrt_phantom_from_json(R"({"model":"halfspace","bumps":[{"center":[0,0,1],"amplitude":1,"width":0.3}]})",
                                &hs.p) == XRT_OK);
  const double steps[3] = {0.04, 0.02, 0.01};
  xrt_convergence_report r{};
  REQUIRE(xrt_h3_harmonicity(hs.p, 8, 0.5, 3, steps, 3, 0, &r) == XRT_OK);
  CHECK(r.consistent == 1);
}

TEST_CASE("reconstruction and topology") {
  Phantom f;
  REQUIRE(xrt_phantom_from_json(R"({"bumps":[{"center":[0,0,0],"amplitude":1,"width":0.5}]})", &f.p) == XRT_OK);
  xrt_reconstruct_report r{};
  REQUIRE(xrt_reconstruct(f.p, 0, 0, 0, 0, 96, 48, 96, 1, 0, &r) == XRT_OK);
  CHECK(r.rel_error < 0.02);
  CHECK(r.levels == 1);
  CHECK(xrt_reconstruct(f.p, 1, 0, 0, 0, 96, 48, 96, 1, 0, &r) == XRT_ERR_INVALID_ARGUMENT);

  xrt_topology_report t{};
  REQUIRE(xrt_topology(0, 3, 19, 1, &t) == XRT_OK);
  CHECK(t.chi == 24);
  CHECK(t.tau == -16);
  CHECK(std::string(xrt_verdict_string(t.verdict)) == "Admissible");
  CHECK(std::string(xrt_paracomplex_string(t.paracomplex)) == "ObstructsParallelParacomplex");
  CHECK(xrt_topology(-1, 0, 0, 0, &t) == XRT_ERR_INVALID_BETTI);
}
