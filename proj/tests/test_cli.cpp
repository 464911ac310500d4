// Runs the xrt executable end to end and inspects exit codes and reports.
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "xrt/xrt.h"

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

Run xrt(const std::string& args) {
  const std::string cmd = std::string(XRT_CLI_PATH) + " " + args + " > cli_out.txt 2> cli_err.txt";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp("cli_out.txt");
  r.err = slurp("cli_err.txt");
  return r;
}

json report(const Run& r) {
  INFO(r.err);
  REQUIRE(r.code <= 1);
  return json::parse(r.out);
}

const char* kFlat = R"({"bumps":[{"center":[0.3,-0.2,0.1],"amplitude":1.0,"width":0.5}]})";
const char* kHalfspace =
    R"({"model":"halfspace","bumps":[{"center":[0.1,0.0,1.0],"amplitude":1.0,"width":0.3}]})";

struct Files {
  Files() {
    spit("flat.json", kFlat);
    spit("halfspace.json", kHalfspace);
    spit("bad_width.json", R"({"bumps":[{"center":[0,0,0],"amplitude":1,"width":-0.5}]})");
  }
};

}  // namespace

TEST_CASE_FIXTURE(Files, "topology verdicts and exit codes") {
  Run r = xrt("topology --b1 0 --bplus 1 --bminus 0 --simply-connected");
  CHECK(r.code == 0);
  json j = report(r);
  CHECK(j["verdict"] == "Obstructed");
  CHECK(j["chi"] == 3);
  CHECK(j["schema"] == 1);

  r = xrt("topology --b1 0 --bplus 3 --bminus 19 --simply-connected");
  CHECK(report(r)["verdict"] == "Admissible");

  CHECK(xrt("topology --b1 -1 --bplus 0 --bminus 0").code == 2);
  CHECK(xrt("no-such-command").code == 2);
  CHECK(xrt("").code == 2);
}

TEST_CASE_FIXTURE(Files, "phantom errors are usage errors") {
  Run r = xrt("xray --phantom missing.json --line 0,0,0,0");
  CHECK(r.code == 2);
  r = xrt("xray --phantom bad_width.json --line 0,0,0,0");
  CHECK(r.code == 2);
  CHECK(r.err.find("$.bumps[0].width") != std::string::npos);
  r = xrt("xray --phantom halfspace.json --line 0,0,0,0");
  CHECK(r.code == 2);
  r = xrt("xray --phantom flat.json --line 0,0,0");
  CHECK(r.code == 2);
}

TEST_CASE_FIXTURE(Files, "xray values round trip losslessly") {
  Run r = xrt("xray --phantom flat.json --line 0.25,-0.5,0.1,0.3");
  REQUIRE(r.code == 0);
  const json j = report(r);
  REQUIRE(j["results"].size() == 1);
  const double printed = j["results"][0]["value"].get<double>();

  xrt_phantom* p = nullptr;
  REQUIRE(xrt_phantom_from_json(kFlat, &p) == XRT_OK);
  double direct = 0.0;
  REQUIRE(xrt_xray(p, {0.25, -0.5, 0.1, 0.3}, 0.0, &direct) == XRT_OK);
  xrt_phantom_destroy(p);
  CHECK(printed == direct);

  r = xrt("xray --phantom flat.json");
  REQUIRE(r.code == 0);
  const json empty = report(r);
  CHECK(empty["schema"] == 1);
  CHECK(empty["results"].is_array());
  CHECK(empty["results"].empty());
}

TEST_CASE_FIXTURE(Files, "seeded output is reproducible and thread independent") {
  const Run a = xrt("xray --phantom flat.json --random 40 --seed 7 --threads 1");
  const Run b = xrt("xray --phantom flat.json --random 40 --seed 7 --threads 4");
  const Run c = xrt("xray --phantom flat.json --random 40 --seed 8");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);

  const Run u1 = xrt("uhe-check --phantom flat.json --grid 7 --levels 2 --threads 1");
  const Run u4 = xrt("uhe-check --phantom flat.json --grid 7 --levels 2 --threads 4");
  REQUIRE(u1.code <= 1);
  CHECK(u1.out == u4.out);
}

TEST_CASE_FIXTURE(Files, "uhe-check reports second order and writes the grid") {
  std::filesystem::remove("grid.csv");
  const Run r = xrt("uhe-check --phantom flat.json --grid 9 --h 0.2 --levels 3 --csv grid.csv");
  CHECK(r.code == 0);
  const json j = report(r);
  REQUIRE(j["orders"].size() == 2);
  for (const auto& o : j["orders"]) CHECK(o.get<double>() >= 1.8);
  CHECK(j["consistent"] == true);

  std::ifstream csv("grid.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "X1,X2,X3,X4,u,valid");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 9 * 9 * 9 * 9);
}

TEST_CASE_FIXTURE(Files, "ruled surfaces") {
  std::filesystem::remove("circles.obj");
  Run r = xrt("ruled --kind circles --r0 1 --m 12 --samples-u 12 --samples-r 6 --out circles.obj");
  CHECK(r.code == 0);
  json j = report(r);
  CHECK(j["max_cross_distance"].get<double>() < 1e-8);
  CHECK(j["quadric"]["kind"] == "one_sheet_hyperboloid");
  CHECK(std::filesystem::file_size("circles.obj") > 0);
  CHECK(slurp("circles.obj").rfind("v ", 0) == 0);

  r = xrt("ruled --kind circles --r0 1 --r0-perp 1.1 --m 12 --samples-u 8 --samples-r 4");
  CHECK(r.code == 1);
  CHECK(report(r)["passed"] == false);

  CHECK(xrt("ruled --kind ellipses --r0 1").code == 2);
}

TEST_CASE_FIXTURE(Files, "mean value identities") {
  Run r = xrt("mvt --phantom flat.json --kind hyperbolae --r0 0.7 --asgeirsson 5");
  CHECK(r.code == 0);
  CHECK(report(r)["passed"] == true);
}

TEST_CASE_FIXTURE(Files, "h3-check") {
  Run r = xrt("h3-check --concoo 50");
  CHECK(r.code == 0);
  CHECK(report(r)["conformal_coordinates"]["max_round_trip"].get<double>() < 1e-9);

  r = xrt("h3-check --phantom halfspace.json --samples 6");
  CHECK(r.code == 0);

  r = xrt("h3-check --r0 2.5 --ruling-samples 6 --samples-r 4");
  CHECK(r.code == 3);
  CHECK(r.err.find("BranchFailure") != std::string::npos);

  CHECK(xrt("h3-check").code == 2);
}

TEST_CASE_FIXTURE(Files, "reconstruct tolerance gates the exit code") {
  Run r = xrt("reconstruct --phantom flat.json --levels 1");
  CHECK(r.code == 0);
  json j = report(r);
  CHECK(j["rel_error"].get<double>() <= 0.02);
  r = xrt("reconstruct --phantom flat.json --levels 1 --tol 1e-9");
  CHECK(r.code == 1);
  CHECK(xrt("reconstruct --phantom flat.json --xi0 abc").code == 2);
}

TEST_CASE_FIXTURE(Files, "config files and flag precedence") {
  spit("cfg.json", R"({"phantom":"flat.json","grid":7,"levels":2,"h":0.3})");
  Run r = xrt("uhe-check --config cfg.json");
  REQUIRE(r.code <= 1);
  json j = report(r);
  CHECK(j["grid"] == 7);
  CHECK(j["levels"][0]["h"].get<double>() == 0.3);

  r = xrt("uhe-check --config cfg.json --grid 5");
  j = report(r);
  CHECK(j["grid"] == 5);

  spit("bad_cfg.json", R"({"phantom":"flat.json","bogus":1})");
  r = xrt("uhe-check --config bad_cfg.json");
  CHECK(r.code == 2);
  CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE_FIXTURE(Files, "report file output") {
  std::filesystem::remove("report.json");
  const Run r = xrt("topology --b1 0 --bplus 3 --bminus 19 --simply-connected --report report.json");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp("report.json"))["tau"] == -16);
}
