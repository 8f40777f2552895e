#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "drs/errors.h"

namespace drs {

using Vertex = int;
using Edge = int;
using Face = int;
// An oriented edge is a face-side slot id 3*f + s. Slot s of face f is the
// counterclockwise boundary step from corner (s+1)%3 to corner (s+2)%3, so the
// side with slot s lies opposite corner s and the face sits on its left shore.
using OrientedEdge = int;

// Closed oriented surface glued from flat triangles along equal-length sides.
// Purely intrinsic: the only metric data are the three side lengths per face.
// Multigraph gluings (self-gluings, repeated edges between the same vertices)
// are fully supported; the one-vertex torus is a valid instance.
class SurfaceMesh {
public:
  // side_lengths[f][s] = length of the side opposite corner s of face f.
  // gluing[f][s] = slot id (3*f' + s') glued to slot (f, s). The pairing must
  // be a fixed-point-free involution; glued sides must have equal lengths.
  // A negative gluing entry marks an unglued (boundary) side and is rejected.
  static SurfaceMesh build(const std::vector<std::array<double, 3>>& side_lengths,
                           const std::vector<std::array<int, 3>>& gluing);

  int face_count() const { return n_faces_; }
  int vertex_count() const { return n_vertices_; }
  int edge_count() const { return n_edges_; }
  int oriented_edge_count() const { return 3 * n_faces_; }
  int genus() const { return genus_; }

  // oriented edge accessors
  OrientedEdge opposite(OrientedEdge e) const { return glue_[e]; }
  Vertex tail(OrientedEdge e) const { return corner_vertex_[3 * (e / 3) + (e % 3 + 1) % 3]; }
  Vertex head(OrientedEdge e) const { return corner_vertex_[3 * (e / 3) + (e % 3 + 2) % 3]; }
  Face left(OrientedEdge e) const { return e / 3; }
  Face right(OrientedEdge e) const { return glue_[e] / 3; }
  OrientedEdge next_in_face(OrientedEdge e) const { return 3 * (e / 3) + (e % 3 + 1) % 3; }
  OrientedEdge prev_in_face(OrientedEdge e) const { return 3 * (e / 3) + (e % 3 + 2) % 3; }
  // next outgoing edge counterclockwise around tail(e)
  OrientedEdge out_ccw_next(OrientedEdge e) const { return glue_[prev_in_face(e)]; }
  // next outgoing edge clockwise around tail(e)
  OrientedEdge out_cw_next(OrientedEdge e) const { return next_in_face(glue_[e]); }

  Edge edge_of(OrientedEdge e) const { return edge_of_slot_[e]; }
  // canonical orientation of an unoriented edge
  OrientedEdge canonical(Edge e) const { return edge_rep_[e]; }
  bool is_canonical(OrientedEdge e) const { return edge_rep_[edge_of_slot_[e]] == e; }
  // +1 on the canonical orientation, -1 on the other
  double orientation_sign(OrientedEdge e) const { return is_canonical(e) ? 1.0 : -1.0; }

  double length(OrientedEdge e) const { return side_len_[e]; }
  double edge_length(Edge e) const { return side_len_[edge_rep_[e]]; }

  Vertex corner_vertex(Face f, int c) const { return corner_vertex_[3 * f + c]; }
  double corner_angle(Face f, int c) const { return corner_angle_[3 * f + c]; }
  // angle opposite an oriented edge, in the face on its left
  double opposite_angle(OrientedEdge e) const { return corner_angle_[e]; }
  double face_area(Face f) const { return face_area_[f]; }
  double total_area() const { return total_area_; }

  // outgoing oriented edges of v in counterclockwise rotation order
  const std::vector<OrientedEdge>& outgoing(Vertex v) const { return outgoing_[v]; }
  // position of e within outgoing(tail(e))
  int out_index(OrientedEdge e) const { return out_index_[e]; }
  int degree(Vertex v) const { return static_cast<int>(outgoing_[v].size()); }

private:
  int n_faces_ = 0, n_vertices_ = 0, n_edges_ = 0, genus_ = 0;
  std::vector<double> side_len_;      // per slot
  std::vector<int> glue_;             // per slot
  std::vector<Vertex> corner_vertex_; // per corner slot 3f+c
  std::vector<double> corner_angle_;  // per corner slot
  std::vector<Edge> edge_of_slot_;
  std::vector<OrientedEdge> edge_rep_;
  std::vector<double> face_area_;
  double total_area_ = 0;
  std::vector<std::vector<OrientedEdge>> outgoing_;
  std::vector<int> out_index_;
};

// cotan weights c(e) = (cot(alpha_e) + cot(beta_e)) / 2
struct EdgeWeights {
  Eigen::VectorXd c; // per unoriented edge
  double operator[](Edge e) const { return c[e]; }
};

EdgeWeights cotan_weights(const SurfaceMesh& mesh);

struct GeometryReport {
  int genus = 0;
  double max_edge_length = 0;
  double min_corner_angle = 0;
  Eigen::VectorXd aperture; // per vertex, sum of incident corner angles
  Eigen::VectorXd gamma_z;  // 2*pi / aperture
  double gamma_s = 0;       // min(1, min_z gamma_z)
  bool is_delaunay = false; // alpha_e + beta_e <= pi for all edges
  double condition_d_margin = 0; // min_e (pi - alpha_e - beta_e)
};

GeometryReport geometry_report(const SurfaceMesh& mesh);

} // namespace drs
