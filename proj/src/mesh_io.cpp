#include "drs/mesh_io.h"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace drs {

namespace {

// strip comments, return whitespace-separated tokens
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

int parse_slot(const std::string& tok) {
  if (tok == "-") return -1;
  const auto colon = tok.find(':');
  require(colon != std::string::npos, ErrorKind::ParseError,
          "expected face:slot gluing target, got '" + tok + "'");
  try {
    const int f = std::stoi(tok.substr(0, colon));
    const int s = std::stoi(tok.substr(colon + 1));
    require(f >= 0 && s >= 0 && s < 3, ErrorKind::ParseError, "bad gluing target '" + tok + "'");
    return 3 * f + s;
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad gluing target '" + tok + "'");
  }
}

} // namespace

SurfaceMesh read_mesh_text(std::istream& in) {
  const auto tokens = tokenize(in);
  require(!tokens.empty(), ErrorKind::ParseError, "empty mesh file");
  require(tokens.size() % 6 == 0, ErrorKind::ParseError,
          "mesh file must contain 6 tokens per face record");
  const int F = static_cast<int>(tokens.size() / 6);
  std::vector<std::array<double, 3>> lengths(F);
  std::vector<std::array<int, 3>> gluing(F);
  for (int f = 0; f < F; ++f) {
    for (int s = 0; s < 3; ++s) {
      try {
        lengths[f][s] = std::stod(tokens[6 * f + s]);
      } catch (const std::logic_error&) {
        fail(ErrorKind::ParseError, "bad length '" + tokens[6 * f + s] + "'");
      }
      gluing[f][s] = parse_slot(tokens[6 * f + 3 + s]);
    }
  }
  return SurfaceMesh::build(lengths, gluing);
}

SurfaceMesh read_mesh_text_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::ParseError, "cannot open mesh file " + path);
  return read_mesh_text(in);
}

void write_mesh_text(std::ostream& out, const SurfaceMesh& mesh) {
  out.precision(17);
  for (Face f = 0; f < mesh.face_count(); ++f) {
    for (int s = 0; s < 3; ++s) out << mesh.length(3 * f + s) << ' ';
    for (int s = 0; s < 3; ++s) {
      const int t = mesh.opposite(3 * f + s);
      out << t / 3 << ':' << t % 3 << (s == 2 ? '\n' : ' ');
    }
  }
}

SurfaceMesh import_indexed_triangles(std::istream& in) {
  std::vector<std::array<double, 3>> pos;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  while (std::getline(in, line)) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "v") {
      std::array<double, 3> p{};
      require(static_cast<bool>(ls >> p[0] >> p[1] >> p[2]), ErrorKind::ParseError,
              "bad vertex record");
      pos.push_back(p);
    } else if (kind == "f") {
      std::array<int, 3> t{};
      std::string tok;
      for (int i = 0; i < 3; ++i) {
        require(static_cast<bool>(ls >> tok), ErrorKind::ParseError, "bad face record");
        // tolerate OBJ "i/j/k" attribute syntax
        t[i] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
        require(t[i] >= 0 && t[i] < static_cast<int>(pos.size()), ErrorKind::ParseError,
                "face index out of range");
      }
      tris.push_back(t);
    }
  }
  require(!tris.empty(), ErrorKind::ParseError, "no faces in input");

  const int F = static_cast<int>(tris.size());
  std::vector<std::array<double, 3>> lengths(F);
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s) {
      const auto& a = pos[tris[f][(s + 1) % 3]];
      const auto& b = pos[tris[f][(s + 2) % 3]];
      lengths[f][s] = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    }

  // slot (f,s) traverses tail=corner s+1 -> head=corner s+2; its partner
  // traverses the same vertex pair in the opposite direction
  std::map<std::pair<int, int>, int> open_sides;
  std::vector<std::array<int, 3>> gluing(F, {-1, -1, -1});
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s) {
      const int t = tris[f][(s + 1) % 3], h = tris[f][(s + 2) % 3];
      require(t != h, ErrorKind::ParseError, "degenerate face side");
      require(!open_sides.count({t, h}), ErrorKind::NonOrientable,
              "directed side repeated; faces are not consistently oriented");
      if (auto it = open_sides.find({h, t}); it != open_sides.end()) {
        const int other = it->second;
        gluing[f][s] = other;
        gluing[other / 3][other % 3] = 3 * f + s;
        open_sides.erase(it);
      } else {
        open_sides[{t, h}] = 3 * f + s;
      }
    }
  require(open_sides.empty(), ErrorKind::HasBoundary,
          std::to_string(open_sides.size()) + " unmatched sides");
  return SurfaceMesh::build(lengths, gluing);
}

SurfaceMesh import_indexed_triangles_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::ParseError, "cannot open file " + path);
  return import_indexed_triangles(in);
}

} // namespace drs
