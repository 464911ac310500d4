#pragma once

#include <array>
#include <string>
#include <vector>

#include "xrt/line_space.hpp"

namespace xrt {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // zero-based

  bool empty() const { return vertices.empty(); }
  void append(const TriangleMesh& other);
};

// ASCII OBJ. Throws Error(Io) when the file cannot be written.
void write_obj(const TriangleMesh& mesh, const std::string& path);
std::string to_obj(const TriangleMesh& mesh);

}  // namespace xrt
