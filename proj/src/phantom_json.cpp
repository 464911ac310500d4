#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xrt/error.hpp"
#include "xrt/phantom.hpp"

namespace xrt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ": " + what);
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "." + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

}  // namespace

AnyPhantom parse_phantom_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("phantom JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "model" && key != "bumps") fail("$." + key, "unknown key");
  }
  std::string model = "flat";
  if (doc.contains("model")) {
    if (!doc["model"].is_string()) fail("$.model", "expected a string");
    model = doc["model"].get<std::string>();
    if (model != "flat" && model != "halfspace") fail("$.model", "expected \"flat\" or \"halfspace\"");
  }
  if (!doc.contains("bumps") || !doc["bumps"].is_array()) fail("$.bumps", "expected an array");

  std::vector<GaussianBump> bumps;
  const json& arr = doc["bumps"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "$.bumps[" + std::to_string(i) + "]";
    const json& b = arr[i];
    if (!b.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : b.items()) {
      if (key != "center" && key != "amplitude" && key != "width") fail(path + "." + key, "unknown key");
    }
    if (!b.contains("center") || !b["center"].is_array() || b["center"].size() != 3) {
      fail(path + ".center", "expected [x, y, z]");
    }
    GaussianBump bump;
    for (int k = 0; k < 3; ++k) {
      if (!b["center"][k].is_number()) fail(path + ".center[" + std::to_string(k) + "]", "expected a number");
      bump.center[k] = b["center"][k].get<double>();
    }
    bump.amplitude = number_at(b, "amplitude", path);
    bump.width = number_at(b, "width", path);
    if (!(bump.width > 0.0)) fail(path + ".width", "must be > 0");
    if (model == "halfspace" && !(bump.center.z() > 0.0)) fail(path + ".center[2]", "must be > 0 in the half-space model");
    bumps.push_back(bump);
  }
  if (model == "halfspace") return H3Phantom(std::move(bumps));
  return Phantom(std::move(bumps));
}

AnyPhantom load_phantom_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open phantom file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_phantom_json(ss.str());
}

}  // namespace xrt
