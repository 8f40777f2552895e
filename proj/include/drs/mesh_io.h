#pragma once

#include <iosfwd>
#include <string>

#include "drs/surface_mesh.h"

namespace drs {

// Text mesh format, whitespace-insensitive, '#' starts a comment that runs to
// end of line. One record per face, six tokens:
//
//   L0 L1 L2  f0:s0 f1:s1 f2:s2
//
// Ls is the length of the side opposite corner s; fi:si is the face:slot the
// i-th side is glued to (0-based). A "-" marks an unglued side, which is
// rejected by the builder with HasBoundary. Face ids are assigned in record
// order starting from 0.
SurfaceMesh read_mesh_text(std::istream& in);
SurfaceMesh read_mesh_text_file(const std::string& path);
void write_mesh_text(std::ostream& out, const SurfaceMesh& mesh);

// Importer for indexed triangles with 3D vertex coordinates (OBJ subset:
// "v x y z" and "f i j k" records, 1-based indices). Side lengths are computed
// from the coordinates and the embedding is discarded; the gluing is derived
// by matching directed vertex pairs, so the input must be manifold, closed
// and consistently oriented.
SurfaceMesh import_indexed_triangles(std::istream& in);
SurfaceMesh import_indexed_triangles_file(const std::string& path);

} // namespace drs
