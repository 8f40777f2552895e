#pragma once

#include <complex>
#include <random>
#include <set>

#include "drs/generators.h"
#include "drs/harmonic.h"
#include "drs/homology.h"

namespace drs::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// two copies of a triangle glued along all three sides: the minimal sphere
inline SurfaceMesh pillow(double l0 = 1, double l1 = 1, double l2 = 1) {
  std::vector<std::array<double, 3>> lengths = {{l0, l1, l2}, {l0, l2, l1}};
  std::vector<std::array<int, 3>> gluing = {{3 + 0, 3 + 2, 3 + 1}, {0, 2, 1}};
  return SurfaceMesh::build(lengths, gluing);
}

// rebuild a mesh with every edge length independently perturbed; small
// amplitudes keep triangles valid while destroying Delaunay-ness and symmetry
inline SurfaceMesh jitter_mesh(const SurfaceMesh& mesh, double amplitude, Rng& rng) {
  Eigen::VectorXd factor(mesh.edge_count());
  for (Edge e = 0; e < mesh.edge_count(); ++e) factor[e] = 1 + uniform(rng, -amplitude, amplitude);
  std::vector<std::array<double, 3>> lengths(mesh.face_count());
  std::vector<std::array<int, 3>> gluing(mesh.face_count());
  for (Face f = 0; f < mesh.face_count(); ++f)
    for (int s = 0; s < 3; ++s) {
      lengths[f][s] = mesh.length(3 * f + s) * factor[mesh.edge_of(3 * f + s)];
      gluing[f][s] = mesh.opposite(3 * f + s);
    }
  return SurfaceMesh::build(lengths, gluing);
}

inline GeneratedSurface jittered(const GeneratedSurface& g, double amplitude, Rng& rng) {
  GeneratedSurface out;
  out.mesh = jitter_mesh(g.mesh, amplitude, rng);
  out.basis_loops = g.basis_loops;
  return out;
}

inline MultiValuedField random_field(const SurfaceMesh& mesh, int genus, Rng& rng,
                                     bool with_imaginary = true) {
  MultiValuedField f;
  f.u_base.resize(mesh.vertex_count());
  for (int i = 0; i < f.u_base.size(); ++i) f.u_base[i] = uniform(rng, -1, 1);
  f.p_re.resize(2 * genus);
  for (int i = 0; i < f.p_re.size(); ++i) f.p_re[i] = uniform(rng, -1, 1);
  if (with_imaginary) {
    f.v_base.resize(mesh.face_count());
    for (int i = 0; i < f.v_base.size(); ++i) f.v_base[i] = uniform(rng, -1, 1);
    f.p_im.resize(2 * genus);
    for (int i = 0; i < f.p_im.size(); ++i) f.p_im[i] = uniform(rng, -1, 1);
  }
  return f;
}

// grow a simply-connected face set (checked through the Euler characteristic
// of the incident subcomplex)
inline std::vector<Face> grow_disk(const SurfaceMesh& mesh, Face seed, int target, Rng& rng) {
  std::set<Face> disk{seed};
  auto euler = [&](const std::set<Face>& faces) {
    std::set<Vertex> vs;
    std::set<Edge> es;
    for (Face f : faces)
      for (int s = 0; s < 3; ++s) {
        vs.insert(mesh.corner_vertex(f, s));
        es.insert(mesh.edge_of(3 * f + s));
      }
    return static_cast<int>(vs.size()) - static_cast<int>(es.size()) +
           static_cast<int>(faces.size());
  };
  for (int attempts = 0; static_cast<int>(disk.size()) < target && attempts < 20 * target;
       ++attempts) {
    std::vector<Face> frontier;
    for (Face f : disk)
      for (int s = 0; s < 3; ++s) {
        const Face g = mesh.right(3 * f + s);
        if (!disk.count(g)) frontier.push_back(g);
      }
    if (frontier.empty()) break;
    const Face cand = frontier[static_cast<size_t>(uniform(rng, 0, 1) * frontier.size()) %
                               frontier.size()];
    disk.insert(cand);
    if (euler(disk) != 1 || static_cast<int>(disk.size()) == mesh.face_count()) disk.erase(cand);
  }
  return {disk.begin(), disk.end()};
}

// signed crossings of a dual (face) loop with a primal loop; certifies the
// homology class of left-shifted dual loops against the intersection form
inline int dual_primal_intersection(const SurfaceMesh& mesh,
                                    const std::vector<OrientedEdge>& dual,
                                    const std::vector<OrientedEdge>& primal) {
  int total = 0;
  for (OrientedEdge x : dual)
    for (OrientedEdge u : primal)
      if (mesh.edge_of(x) == mesh.edge_of(u)) total += (u == x) ? -1 : 1;
  return total;
}

} // namespace drs::testing
