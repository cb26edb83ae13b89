#pragma once

#include <iosfwd>
#include <string>

#include "feedplan/geom/mesh.hpp"

namespace feedplan::geom {

/// ASCII OBJ, `v` and `f` records only, 1-based indices. Face entries may
/// carry `/vt/vn` suffixes, which are ignored. Non-triangle faces are
/// rejected with TopologyError; other record types are skipped.
TriMesh read_obj(std::istream& in);
TriMesh read_obj_file(const std::string& path);

void write_obj(std::ostream& out, const TriMesh& mesh);
void write_obj_file(const std::string& path, const TriMesh& mesh);

}  // namespace feedplan::geom
