#include "feedplan/geom/obj_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "feedplan/error.hpp"

namespace feedplan::geom {

TriMesh read_obj(std::istream& in) {
  TriMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d v;
      if (!(ls >> v.x() >> v.y() >> v.z())) {
        throw TopologyError("obj line " + std::to_string(line_no) + ": malformed vertex");
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string token;
      while (ls >> token) idx.push_back(std::stoi(token.substr(0, token.find('/'))));
      if (idx.size() != 3) {
        throw TopologyError("obj line " + std::to_string(line_no) + ": only triangles are supported");
      }
      Face f{};
      for (int k = 0; k < 3; ++k) {
        // Negative indices count back from the most recent vertex.
        f[k] = idx[k] > 0 ? idx[k] - 1 : static_cast<int>(mesh.vertices.size()) + idx[k];
      }
      mesh.faces.push_back(f);
    }
  }
  validate_indices(mesh);
  return mesh;
}

TriMesh read_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_obj(in);
}

void write_obj(std::ostream& out, const TriMesh& mesh) {
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_obj_file(const std::string& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_obj(out, mesh);
}

}  // namespace feedplan::geom
