// xrt command-line driver. Everything numeric goes through the C interface.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xrt/xrt.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

void check(xrt_status s, const char* what) {
  if (s == XRT_OK) return;
  std::string msg = std::string(what) + ": " + xrt_status_string(s) + ": " + xrt_last_error();
  const bool user_input = s == XRT_ERR_INVALID_ARGUMENT || s == XRT_ERR_PARSE || s == XRT_ERR_GRID_TOO_SMALL ||
                          s == XRT_ERR_INVALID_BETTI;
  throw Failure{user_input ? kExitUsage : kExitNumeric, msg};
}

// ---- output ----

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann prints the shortest round-trip form; reports use a fixed 17 digits instead.
void write_json(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(k).dump() << ": ";
        write_json(os, v, indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool nested = std::any_of(j.begin(), j.end(), [](const json& v) { return v.is_structured(); });
      os << (nested ? "[\n" : "[");
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (nested ? ",\n" : ", ");
        first = false;
        if (nested) os << pad;
        write_json(os, v, indent, depth + 1);
      }
      os << (nested ? "\n" + close + "]" : "]");
      return;
    }
    case json::value_t::number_float:
      os << fmt_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

std::string render(const json& j) {
  std::ostringstream os;
  write_json(os, j, 2, 0);
  os << "\n";
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitNumeric, "cannot write '" + path + "'"};
  out << text;
  if (!out) throw Failure{kExitNumeric, "write failed for '" + path + "'"};
}

void emit_report(const json& report, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << render(report);
  } else {
    write_text(path, render(report));
  }
}

// ---- argument helpers ----

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      usage(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  if (expected && out.size() != expected) {
    usage(flag + ": expected " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

// Accepts forms like 0.4+0.2i, -1.5e-1-2i, 0.3, 2i.
std::pair<double, double> parse_complex(std::string text, const std::string& flag) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  auto num = [&](const std::string& s, double unit) {
    if (s.empty() || s == "+") return unit;
    if (s == "-") return -unit;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      usage(flag + ": cannot parse '" + text + "' as a complex number");
    }
  };
  if (text.empty()) usage(flag + ": empty value");
  if (text.back() != 'i') return {num(text, 0.0), 0.0};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(text, 1.0)};
  return {num(text.substr(0, split), 0.0), num(text.substr(split), 1.0)};
}

xrt_conformal parse_point(const std::string& text, const std::string& flag) {
  const auto v = parse_list(text, 4, flag);
  return {{v[0], v[1], v[2], v[3]}};
}

struct PhantomHandle {
  xrt_phantom* p = nullptr;
  PhantomHandle() = default;
  PhantomHandle(const PhantomHandle&) = delete;
  PhantomHandle& operator=(const PhantomHandle&) = delete;
  ~PhantomHandle() { xrt_phantom_destroy(p); }
};

struct MeshHandle {
  xrt_mesh* m = nullptr;
  MeshHandle() = default;
  MeshHandle(const MeshHandle&) = delete;
  MeshHandle& operator=(const MeshHandle&) = delete;
  ~MeshHandle() { xrt_mesh_destroy(m); }
};

void load_phantom(const std::string& path, PhantomHandle& h, bool want_halfspace) {
  if (path.empty()) usage("--phantom is required");
  if (!std::filesystem::exists(path)) usage("--phantom: file '" + path + "' does not exist");
  const xrt_status s = xrt_phantom_load(path.c_str(), &h.p);
  if (s != XRT_OK) throw Failure{kExitUsage, std::string("--phantom: ") + xrt_last_error()};
  if (static_cast<bool>(xrt_phantom_is_halfspace(h.p)) != want_halfspace) {
    usage(std::string("--phantom: this command needs a ") + (want_halfspace ? "\"halfspace\"" : "\"flat\"") +
          " model phantom");
  }
}

json line_json(const xrt_line& l) { return json::array({l.xi_re, l.xi_im, l.eta_re, l.eta_im}); }

json convergence_json(const xrt_convergence_report& r) {
  json levels = json::array();
  for (int i = 0; i < r.levels; ++i) levels.push_back({{"h", r.h[i]}, {"sup_residual", r.sup_residual[i]}});
  json orders = json::array();
  for (int i = 0; i + 1 < r.levels; ++i) orders.push_back(r.orders[i]);
  return {{"levels", levels}, {"orders", orders}, {"consistent", r.consistent != 0}};
}

int conic_kind(const std::string& s) {
  if (s == "circles") return XRT_CONIC_CIRCLES;
  if (s == "hyperbolae") return XRT_CONIC_HYPERBOLAE;
  if (s == "parabolae") return XRT_CONIC_PARABOLAE;
  usage("--kind: expected circles, hyperbolae or parabolae, got '" + s + "'");
}

// ---- configuration ----

struct Common {
  std::string config;
  std::string report;
  int threads = 0;
  unsigned long long seed = 1;
};

struct XrayArgs {
  std::string phantom;
  std::vector<std::string> lines;
  int random = 0;
  double tol = 1e-10;
  std::string csv;
};

struct UheArgs {
  std::string phantom;
  int grid = 9;
  double h = 0.2;
  int levels = 3;
  std::string center = "0,0,0,0";
  std::string csv;
};

struct MvtArgs {
  std::string phantom;
  std::string kind = "circles";
  double r0 = 1.0;
  double r0_perp = 0.0;
  double delta = 0.5;
  std::string center = "0,0,0,0";
  int samples = 256;
  int asgeirsson = 0;
  double tol = 1e-6;
};

struct RuledArgs {
  std::string kind = "circles";
  double r0 = 1.0;
  double r0_perp = 0.0;
  double delta = 0.5;
  std::string center = "0,0,0,0";
  int m = 20;
  int samples_u = 48;
  int samples_r = 24;
  double half_length = 3.0;
  double window = 2.0;
  std::string out;
};

struct H3Args {
  std::string phantom;
  int samples = 50;
  double spread = 0.5;
  std::string h = "0.04,0.02,0.01";
  double r0 = 0.0;
  double r0_perp = 0.0;
  int ruling_samples = 20;
  int samples_r = 40;
  double half_length = 4.0;
  std::string obj_halfspace;
  std::string obj_ball;
  int concoo = 0;
};

struct ReconArgs {
  std::string phantom;
  std::string xi0 = "0";
  std::string eta0 = "0";
  std::string grid = "96,48,96";
  int levels = 3;
  double tol = 0.02;
};

struct TopoArgs {
  int b1 = 0;
  int bplus = 0;
  int bminus = 0;
  bool simply_connected = false;
};

// Flag names present on the command line, without the leading dashes.
std::set<std::string> flags_given(int argc, char** argv) {
  std::set<std::string> out;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) != 0) continue;
    a = a.substr(2);
    if (const auto eq = a.find('='); eq != std::string::npos) a = a.substr(0, eq);
    out.insert(a);
  }
  return out;
}

std::string find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

std::string scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt_double(v.get<double>());
  usage("config key '" + key + "': expected a scalar value");
}

// Appends "--key value" for each config entry not overridden on the command line.
std::vector<std::string> config_args(const std::string& path, CLI::App* sub, const std::set<std::string>& given) {
  if (!std::filesystem::exists(path)) usage("--config: file '" + path + "' does not exist");
  std::ifstream in(path);
  if (!in) usage("--config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    usage(std::string("--config: ") + e.what());
  }
  if (!doc.is_object()) usage("--config: expected a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : doc.items()) {
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (opt == nullptr) usage("config key '" + key + "' is not an option of '" + sub->get_name() + "'");
    if (given.count(key)) continue;
    if (opt->get_type_size() == 0) {
      if (!value.is_boolean()) usage("config key '" + key + "': expected true or false");
      if (value.get<bool>()) out.push_back("--" + key);
      continue;
    }
    if (value.is_array()) {
      for (const auto& v : value) {
        out.push_back("--" + key);
        out.push_back(scalar_text(v, key));
      }
    } else {
      out.push_back("--" + key);
      out.push_back(scalar_text(value, key));
    }
  }
  return out;
}

// ---- commands ----

int run_xray(const XrayArgs& a, const Common& c) {
  PhantomHandle f;
  load_phantom(a.phantom, f, false);
  std::vector<xrt_line> lines;
  for (const auto& s : a.lines) {
    const auto v = parse_list(s, 4, "--line");
    lines.push_back({v[0], v[1], v[2], v[3]});
  }
  if (a.random < 0) usage("--random must be >= 0");
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < a.random; ++i) {
    xrt_line l{gauss(rng), gauss(rng), unit(rng), unit(rng)};
    lines.push_back(l);
  }
  json rows = json::array();
  std::ostringstream csv;
  csv << "xi_re,xi_im,eta_re,eta_im,value\n";
  for (const auto& l : lines) {
    double v = 0.0;
    check(xrt_xray(f.p, l, a.tol, &v), "xray");
    rows.push_back({{"line", line_json(l)}, {"value", v}});
    csv << fmt_double(l.xi_re) << ',' << fmt_double(l.xi_im) << ',' << fmt_double(l.eta_re) << ','
        << fmt_double(l.eta_im) << ',' << fmt_double(v) << '\n';
  }
  if (!a.csv.empty()) write_text(a.csv, csv.str());
  emit_report({{"schema", 1}, {"command", "xray"}, {"seed", c.seed}, {"results", rows}}, c.report);
  return kExitOk;
}

int run_uhe(const UheArgs& a, const Common& c) {
  PhantomHandle f;
  load_phantom(a.phantom, f, false);
  if (a.grid < 5) usage("--grid must be >= 5");
  if (!(a.h > 0.0)) usage("--h must be > 0");
  if (a.levels < 2 || a.levels > XRT_MAX_LEVELS) usage("--levels must be in [2, 8]");
  const xrt_conformal center = parse_point(a.center, "--center");
  xrt_convergence_report r{};
  check(xrt_uhe_check(f.p, center, a.h, a.grid, a.levels, c.threads, &r), "uhe-check");
  if (!a.csv.empty()) {
    xrt_grid4* g = nullptr;
    check(xrt_u_on_grid(f.p, center, a.h, a.grid, 1e-13, c.threads, &g), "u_on_grid");
    std::ostringstream csv;
    csv << "X1,X2,X3,X4,u,valid\n";
    for (std::size_t i = 0; i < xrt_grid4_size(g); ++i) {
      xrt_conformal X{};
      double u = 0.0;
      int valid = 0;
      xrt_grid4_get(g, i, &X, &u, &valid);
      csv << fmt_double(X.x[0]) << ',' << fmt_double(X.x[1]) << ',' << fmt_double(X.x[2]) << ','
          << fmt_double(X.x[3]) << ',' << fmt_double(u) << ',' << valid << '\n';
    }
    xrt_grid4_destroy(g);
    write_text(a.csv, csv.str());
  }
  json rep = {{"schema", 1},
              {"command", "uhe-check"},
              {"grid", a.grid},
              {"center", json::array({center.x[0], center.x[1], center.x[2], center.x[3]})},
              {"min_order", 1.8}};
  rep.update(convergence_json(r));
  emit_report(rep, c.report);
  return r.consistent ? kExitOk : kExitCheckFailed;
}

int run_mvt(const MvtArgs& a, const Common& c) {
  PhantomHandle f;
  load_phantom(a.phantom, f, false);
  if (a.samples < 8) usage("--samples must be >= 8");
  if (a.asgeirsson < 0) usage("--asgeirsson must be >= 0");
  const xrt_conic_pair pair{conic_kind(a.kind), a.r0, parse_point(a.center, "--center"), a.delta, a.r0_perp};
  bool ok = true;
  json rep = {{"schema", 1}, {"command", "mvt"}, {"kind", a.kind}, {"r0", a.r0}};
  if (a.kind == "parabolae") {
    double q = 0.0;
    check(xrt_conic_nullity(&pair, 64, 4.0, &q), "conic nullity");
    rep["nullity_max_abs_Q"] = q;
    rep["nullity_tol"] = 1e-9;
    ok = ok && q < 1e-9;
  }
  xrt_conic_result r{};
  check(xrt_conic_integrals(f.p, &pair, a.samples, &r), "conic integrals");
  const double diff = std::abs(r.on_s - r.on_s_perp);
  rep["integral_S"] = r.on_s;
  rep["integral_S_perp"] = r.on_s_perp;
  rep["difference"] = diff;
  rep["tol"] = a.tol;
  rep["window"] = r.window;
  rep["tail"] = r.tail;
  ok = ok && diff < a.tol;
  if (a.asgeirsson > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0), radius(0.1, 2.0);
    double worst = 0.0;
    for (int i = 0; i < a.asgeirsson; ++i) {
      const double abcd[4] = {coord(rng), coord(rng), coord(rng), coord(rng)};
      const double rr = radius(rng);
      double lhs = 0.0, rhs = 0.0;
      check(xrt_asgeirsson(f.p, abcd, rr, 128, &lhs, &rhs), "asgeirsson");
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep["asgeirsson"] = {{"trials", a.asgeirsson}, {"seed", c.seed}, {"max_difference", worst}, {"tol", 1e-8}};
    ok = ok && worst < 1e-8;
  }
  rep["passed"] = ok;
  emit_report(rep, c.report);
  return ok ? kExitOk : kExitCheckFailed;
}

int run_ruled(const RuledArgs& a, const Common& c) {
  if (a.m < 2) usage("--m must be >= 2");
  if (a.samples_u < 3 || a.samples_r < 2) usage("--samples-u must be >= 3 and --samples-r >= 2");
  const xrt_conic_pair pair{conic_kind(a.kind), a.r0, parse_point(a.center, "--center"), a.delta, a.r0_perp};
  xrt_ruled_report r{};
  MeshHandle mesh;
  check(xrt_ruled(&pair, a.m, a.samples_u, a.samples_r, a.half_length, a.window, &r, &mesh.m), "ruled");
  if (!a.out.empty()) check(xrt_mesh_write_obj(mesh.m, a.out.c_str()), "write OBJ");
  const bool ok = r.max_distance < 1e-8;
  json rep = {{"schema", 1},
              {"command", "ruled"},
              {"kind", a.kind},
              {"r0", a.r0},
              {"samples", a.m},
              {"max_cross_distance", r.max_distance},
              {"parallel_pairs", r.parallel_pairs},
              {"min_same_family_distance", r.min_same_family},
              {"tol", 1e-8},
              {"quadric",
               {{"kind", xrt_quadric_kind_string(r.quadric_kind)},
                {"eigenvalues", json::array({r.quadric_eigenvalues[0], r.quadric_eigenvalues[1],
                                             r.quadric_eigenvalues[2]})},
                {"coefficients", std::vector<double>(r.quadric_coeffs, r.quadric_coeffs + 10)},
                {"max_residual", r.quadric_residual}}},
              {"mesh", {{"vertices", xrt_mesh_vertex_count(mesh.m)}, {"faces", xrt_mesh_face_count(mesh.m)}}},
              {"passed", ok}};
  if (!a.out.empty()) rep["obj"] = a.out;
  emit_report(rep, c.report);
  return ok ? kExitOk : kExitCheckFailed;
}

int run_h3(const H3Args& a, const Common& c) {
  if (a.phantom.empty() && a.r0 <= 0.0 && a.concoo <= 0) {
    usage("h3-check: give --phantom, --r0 or --concoo");
  }
  bool ok = true;
  json rep = {{"schema", 1}, {"command", "h3-check"}, {"seed", c.seed}};
  if (!a.phantom.empty()) {
    PhantomHandle f;
    load_phantom(a.phantom, f, true);
    const auto hs = parse_list(a.h, 0, "--h");
    if (hs.size() < 2 || hs.size() > XRT_MAX_LEVELS) usage("--h: give between 2 and 8 step sizes");
    if (a.samples < 1) usage("--samples must be >= 1");
    xrt_convergence_report r{};
    check(xrt_h3_harmonicity(f.p, a.samples, a.spread, c.seed, hs.data(), static_cast<int>(hs.size()), c.threads,
                             &r),
          "harmonicity");
    json h = convergence_json(r);
    h["samples"] = a.samples;
    h["min_order"] = 1.8;
    rep["harmonicity"] = h;
    ok = ok && r.consistent;
  }
  if (a.r0 > 0.0) {
    if (a.ruling_samples < 2) usage("--ruling-samples must be >= 2");
    xrt_h3_ruling_report r{};
    MeshHandle hs, ball;
    check(xrt_doubly_ruled_h3(a.r0, a.r0_perp, XRT_MODEL_HALFSPACE, a.ruling_samples, a.samples_r, a.half_length, &r,
                              &hs.m),
          "doubly ruled (half-space)");
    xrt_h3_ruling_report unused{};
    check(xrt_doubly_ruled_h3(a.r0, a.r0_perp, XRT_MODEL_BALL, a.ruling_samples, a.samples_r, a.half_length, &unused,
                              &ball.m),
          "doubly ruled (ball)");
    if (!a.obj_halfspace.empty()) check(xrt_mesh_write_obj(hs.m, a.obj_halfspace.c_str()), "write OBJ");
    if (!a.obj_ball.empty()) check(xrt_mesh_write_obj(ball.m, a.obj_ball.c_str()), "write OBJ");
    rep["ruling"] = {{"r0", r.r0},
                     {"branch_limit", r.branch_limit},
                     {"pairs", r.pairs},
                     {"pairs_below", r.pairs_below},
                     {"threshold", r.threshold},
                     {"min_cross_distance", r.min_cross},
                     {"max_cross_distance", r.max_cross},
                     {"min_same_family_distance", r.min_same_family},
                     {"klein_coplanarity_defect", r.klein_defect},
                     {"halfspace_mesh_vertices", xrt_mesh_vertex_count(hs.m)},
                     {"ball_mesh_vertices", xrt_mesh_vertex_count(ball.m)}};
  }
  if (a.concoo > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> rad(0.05, 0.9), ang(0.0, 2.0 * M_PI);
    double worst_trip = 0.0, worst_pull = 0.0;
    for (int i = 0; i < a.concoo; ++i) {
      const double r1 = rad(rng), t1 = ang(rng), r2 = rad(rng), t2 = ang(rng);
      const xrt_mu mu{r1 * std::cos(t1), r1 * std::sin(t1), r2 * std::cos(t2), r2 * std::sin(t2)};
      xrt_conformal Z{};
      double omega = 0.0;
      xrt_mu back{};
      check(xrt_concoo_forward(mu, &Z, &omega), "concoo forward");
      check(xrt_concoo_inverse(Z, &back), "concoo inverse");
      worst_trip = std::max({worst_trip, std::abs(back.mu1_re - mu.mu1_re), std::abs(back.mu1_im - mu.mu1_im),
                             std::abs(back.mu2_re - mu.mu2_re), std::abs(back.mu2_im - mu.mu2_im)});
      double defect = 0.0;
      check(xrt_concoo_pullback_defect(mu, &defect), "pullback");
      worst_pull = std::max(worst_pull, defect);
    }
    rep["conformal_coordinates"] = {{"points", a.concoo},
                                    {"max_round_trip", worst_trip},
                                    {"max_pullback_defect", worst_pull},
                                    {"round_trip_tol", 1e-9},
                                    {"pullback_tol", 1e-6}};
    ok = ok && worst_trip < 1e-9 && worst_pull < 1e-6;
  }
  rep["passed"] = ok;
  emit_report(rep, c.report);
  return ok ? kExitOk : kExitCheckFailed;
}

int run_reconstruct(const ReconArgs& a, const Common& c) {
  PhantomHandle f;
  load_phantom(a.phantom, f, false);
  const auto xi0 = parse_complex(a.xi0, "--xi0");
  const auto eta0 = parse_complex(a.eta0, "--eta0");
  const auto g = parse_list(a.grid, 3, "--grid");
  for (double v : g) {
    if (v < 8 || v != std::floor(v)) usage("--grid: expected three integers >= 8");
  }
  if (a.levels < 1 || a.levels > XRT_MAX_LEVELS) usage("--levels must be in [1, 8]");
  xrt_reconstruct_report r{};
  check(xrt_reconstruct(f.p, xi0.first, xi0.second, eta0.first, eta0.second, static_cast<int>(g[0]),
                        static_cast<int>(g[1]), static_cast<int>(g[2]), a.levels, c.threads, &r),
        "reconstruct");
  json table = json::array();
  for (int i = 0; i < r.levels; ++i) {
    const auto& l = r.refinement[i];
    table.push_back({{"n_R", l.n_R},
                     {"n_alpha", l.n_alpha},
                     {"n_r", l.n_r},
                     {"value", l.value},
                     {"abs_error", l.abs_error},
                     {"rel_error", l.rel_error}});
  }
  const bool ok = r.rel_error <= a.tol && (r.levels < 2 || r.monotone);
  emit_report({{"schema", 1},
               {"command", "reconstruct"},
               {"xi0", json::array({xi0.first, xi0.second})},
               {"eta0", json::array({eta0.first, eta0.second})},
               {"translation", json::array({r.translation[0] + 0.0, r.translation[1] + 0.0, r.translation[2] + 0.0})},
               {"reconstructed", r.reconstructed},
               {"direct", r.direct},
               {"rel_error", r.rel_error},
               {"plane_formula", r.plane_formula},
               {"plane_rel_difference", r.plane_rel_difference},
               {"refinement", table},
               {"monotone", r.monotone != 0},
               {"tol", a.tol},
               {"passed", ok}},
              c.report);
  return ok ? kExitOk : kExitCheckFailed;
}

int run_topology(const TopoArgs& a, const Common& c) {
  xrt_topology_report r{};
  check(xrt_topology(a.b1, a.bplus, a.bminus, a.simply_connected ? 1 : 0, &r), "topology");
  emit_report({{"schema", 1},
               {"command", "topology"},
               {"b1", a.b1},
               {"b_plus", a.bplus},
               {"b_minus", a.bminus},
               {"simply_connected", a.simply_connected},
               {"chi", r.chi},
               {"tau", r.tau},
               {"chi_plus_tau_mod4_ok", r.chi_plus_tau_ok != 0},
               {"chi_minus_tau_mod4_ok", r.chi_minus_tau_ok != 0},
               {"verdict", xrt_verdict_string(r.verdict)},
               {"paracomplex", xrt_paracomplex_string(r.paracomplex)}},
              c.report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xrt: X-ray transform experiments in neutral geometry"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", xrt_version());

  Common common;
  XrayArgs xa;
  UheArgs ua;
  MvtArgs ma;
  RuledArgs ra;
  H3Args ha;
  ReconArgs rca;
  TopoArgs ta;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", common.config, "JSON file of option values; flags take precedence");
    s->add_option("--report", common.report, "JSON report path (default: stdout)");
    s->add_option("--threads", common.threads, "worker threads (0: hardware)")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", common.seed, "seed for random sampling");
  };

  auto* xray = app.add_subcommand("xray", "line integrals of a flat phantom");
  add_common(xray);
  xray->add_option("--phantom", xa.phantom, "phantom JSON");
  xray->add_option("--line", xa.lines, "line as xi_re,xi_im,eta_re,eta_im (repeatable)");
  xray->add_option("--random", xa.random, "additional seeded random lines");
  xray->add_option("--tol", xa.tol, "quadrature tolerance");
  xray->add_option("--csv", xa.csv, "CSV output of lines and values");

  auto* uhe = app.add_subcommand("uhe-check", "ultrahyperbolic residual convergence of the X-ray transform");
  add_common(uhe);
  uhe->add_option("--phantom", ua.phantom, "phantom JSON");
  uhe->add_option("--grid", ua.grid, "points per axis of the 4D grid");
  uhe->add_option("--h", ua.h, "coarsest spacing");
  uhe->add_option("--levels", ua.levels, "number of spacings h, h/2, ...");
  uhe->add_option("--center", ua.center, "grid centre X1,X2,X3,X4");
  uhe->add_option("--csv", ua.csv, "CSV of u on the coarsest grid");

  auto* mvt = app.add_subcommand("mvt", "mean value identities over conjugate conics");
  add_common(mvt);
  mvt->add_option("--phantom", ma.phantom, "phantom JSON");
  mvt->add_option("--kind", ma.kind, "circles, hyperbolae or parabolae");
  mvt->add_option("--r0", ma.r0, "conic size");
  mvt->add_option("--r0-perp", ma.r0_perp, "size of the second conic (0: same as r0)");
  mvt->add_option("--delta", ma.delta, "parabola offset");
  mvt->add_option("--center", ma.center, "common centre X1,X2,X3,X4");
  mvt->add_option("--samples", ma.samples, "trapezoid nodes on closed conics");
  mvt->add_option("--asgeirsson", ma.asgeirsson, "random circle-pair trials of the mean value identity");
  mvt->add_option("--tol", ma.tol, "allowed difference of the two integrals");

  auto* ruled = app.add_subcommand("ruled", "doubly ruled surface from a conjugate conic pair");
  add_common(ruled);
  ruled->add_option("--kind", ra.kind, "circles, hyperbolae or parabolae");
  ruled->add_option("--r0", ra.r0, "conic size");
  ruled->add_option("--r0-perp", ra.r0_perp, "size of the second conic (0: same as r0)");
  ruled->add_option("--delta", ra.delta, "parabola offset");
  ruled->add_option("--center", ra.center, "common centre X1,X2,X3,X4");
  ruled->add_option("--m", ra.m, "lines per family in the distance check");
  ruled->add_option("--samples-u", ra.samples_u, "mesh samples along each conic");
  ruled->add_option("--samples-r", ra.samples_r, "mesh samples along each line");
  ruled->add_option("--half-length", ra.half_length, "mesh half length along lines");
  ruled->add_option("--window", ra.window, "parameter window for open conics");
  ruled->add_option("--out", ra.out, "OBJ output");

  auto* h3 = app.add_subcommand("h3-check", "hyperbolic space checks");
  add_common(h3);
  h3->add_option("--phantom", ha.phantom, "half-space phantom JSON (harmonicity check)");
  h3->add_option("--samples", ha.samples, "random chart points");
  h3->add_option("--spread", ha.spread, "sampling spread around the phantom");
  h3->add_option("--h", ha.h, "comma-separated step sizes");
  h3->add_option("--r0", ha.r0, "circle radius for the doubly ruled surface");
  h3->add_option("--r0-perp", ha.r0_perp, "radius of the second circle (0: same as r0)");
  h3->add_option("--ruling-samples", ha.ruling_samples, "geodesics per family");
  h3->add_option("--samples-r", ha.samples_r, "mesh samples along each geodesic");
  h3->add_option("--half-length", ha.half_length, "mesh half length in arclength");
  h3->add_option("--obj-halfspace", ha.obj_halfspace, "OBJ output, half-space model");
  h3->add_option("--obj-ball", ha.obj_ball, "OBJ output, ball model");
  h3->add_option("--concoo", ha.concoo, "random points for the conformal coordinate checks");

  auto* rec = app.add_subcommand("reconstruct", "inversion from lines parallel to a plane");
  add_common(rec);
  rec->add_option("--phantom", rca.phantom, "phantom JSON");
  rec->add_option("--xi0", rca.xi0, "direction of the target line, e.g. 0.4+0.2i");
  rec->add_option("--eta0", rca.eta0, "fibre coordinate of the target line");
  rec->add_option("--grid", rca.grid, "NR,Nalpha,Nr");
  rec->add_option("--levels", rca.levels, "refinement levels");
  rec->add_option("--tol", rca.tol, "allowed relative error");

  auto* topo = app.add_subcommand("topology", "neutral metric admissibility of a closed 4-manifold");
  add_common(topo);
  topo->add_option("--b1", ta.b1, "first Betti number");
  topo->add_option("--bplus", ta.bplus, "b2+");
  topo->add_option("--bminus", ta.bminus, "b2-");
  topo->add_flag("--simply-connected", ta.simply_connected, "the manifold is simply connected");

  try {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    const std::string config = find_config(argc, argv);
    if (!config.empty() && argc > 1) {
      CLI::App* sub = app.get_subcommand_no_throw(argv[1]);
      if (sub == nullptr) usage("--config must follow a subcommand");
      const auto extra = config_args(config, sub, flags_given(argc, argv));
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::Success& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitUsage;
    }
    if (xray->parsed()) return run_xray(xa, common);
    if (uhe->parsed()) return run_uhe(ua, common);
    if (mvt->parsed()) return run_mvt(ma, common);
    if (ruled->parsed()) return run_ruled(ra, common);
    if (h3->parsed()) return run_h3(ha, common);
    if (rec->parsed()) return run_reconstruct(rca, common);
    if (topo->parsed()) return run_topology(ta, common);
    return kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
