#include "drs/surface_mesh.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace drs {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnpairedSide: return "UnpairedSide";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TriangleInequalityViolated: return "TriangleInequalityViolated";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::HasBoundary: return "HasBoundary";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GenusZero: return "GenusZero";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::MissingImaginaryPart: return "MissingImaginaryPart";
    case ErrorKind::ZeroWeightEdge: return "ZeroWeightEdge";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::NotHarmonic: return "NotHarmonic";
    case ErrorKind::SingularBlock: return "SingularBlock";
    case ErrorKind::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorKind::CoincidentPoles: return "CoincidentPoles";
    case ErrorKind::BrokenChain: return "BrokenChain";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::NotDelaunay: return "NotDelaunay";
    case ErrorKind::NonPositiveQuadArea: return "NonPositiveQuadArea";
    case ErrorKind::DegenerateDiagonal: return "DegenerateDiagonal";
    case ErrorKind::DegenerateEta: return "DegenerateEta";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

SurfaceMesh SurfaceMesh::build(const std::vector<std::array<double, 3>>& side_lengths,
                               const std::vector<std::array<int, 3>>& gluing) {
  SurfaceMesh m;
  const int F = static_cast<int>(side_lengths.size());
  require(F > 0, ErrorKind::InvalidArgument, "mesh has no faces");
  require(gluing.size() == side_lengths.size(), ErrorKind::InvalidArgument,
          "gluing and side_lengths face counts differ");
  m.n_faces_ = F;
  const int S = 3 * F;

  m.side_len_.resize(S);
  m.glue_.resize(S);
  for (int f = 0; f < F; ++f)
    for (int s = 0; s < 3; ++s) {
      m.side_len_[3 * f + s] = side_lengths[f][s];
      m.glue_[3 * f + s] = gluing[f][s];
    }

  // triangle inequality, strictly, per face
  for (int f = 0; f < F; ++f) {
    const double a = side_lengths[f][0], b = side_lengths[f][1], c = side_lengths[f][2];
    require(a > 0 && b > 0 && c > 0, ErrorKind::TriangleInequalityViolated,
            "nonpositive side length in face " + std::to_string(f));
    require(a < b + c && b < a + c && c < a + b, ErrorKind::TriangleInequalityViolated,
            "degenerate triangle in face " + std::to_string(f));
  }

  // gluing: fixed-point-free involution, equal lengths on glued sides
  for (int s = 0; s < S; ++s) {
    const int t = m.glue_[s];
    require(t >= 0, ErrorKind::HasBoundary, "side " + std::to_string(s) + " is unglued");
    require(t < S, ErrorKind::UnpairedSide, "gluing target out of range at side " + std::to_string(s));
    require(m.glue_[t] == s, ErrorKind::UnpairedSide,
            "gluing is not involutive at side " + std::to_string(s));
    require(t != s, ErrorKind::NonOrientable,
            "side " + std::to_string(s) + " glued to itself");
    const double la = m.side_len_[s], lb = m.side_len_[t];
    require(std::abs(la - lb) <= 1e-9 * std::max(la, lb), ErrorKind::LengthMismatch,
            "glued sides " + std::to_string(s) + "," + std::to_string(t) + " differ in length");
  }

  // connectivity over face adjacency
  {
    std::vector<char> seen(F, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int found = 1;
    while (!queue.empty()) {
      int f = queue.front();
      queue.pop_front();
      for (int s = 0; s < 3; ++s) {
        int g = m.glue_[3 * f + s] / 3;
        if (!seen[g]) {
          seen[g] = 1;
          ++found;
          queue.push_back(g);
        }
      }
    }
    require(found == F, ErrorKind::Disconnected, "mesh has more than one component");
  }

  // unoriented edges
  m.edge_of_slot_.assign(S, -1);
  for (int s = 0; s < S; ++s) {
    if (m.edge_of_slot_[s] >= 0) continue;
    const int e = static_cast<int>(m.edge_rep_.size());
    m.edge_of_slot_[s] = e;
    m.edge_of_slot_[m.glue_[s]] = e;
    m.edge_rep_.push_back(s);
  }
  m.n_edges_ = static_cast<int>(m.edge_rep_.size());

  // corner angles by the law of cosines; angle at corner c is opposite side c
  m.corner_angle_.resize(S);
  m.face_area_.resize(F);
  m.total_area_ = 0;
  for (int f = 0; f < F; ++f) {
    const double* l = side_lengths[f].data();
    for (int c = 0; c < 3; ++c) {
      const double a = l[c], b = l[(c + 1) % 3], d = l[(c + 2) % 3];
      double cosv = (b * b + d * d - a * a) / (2 * b * d);
      cosv = std::clamp(cosv, -1.0, 1.0);
      m.corner_angle_[3 * f + c] = std::acos(cosv);
    }
    const double s = (l[0] + l[1] + l[2]) / 2;
    m.face_area_[f] = std::sqrt(std::max(0.0, s * (s - l[0]) * (s - l[1]) * (s - l[2])));
    m.total_area_ += m.face_area_[f];
  }

  // vertices = orbits of corners under ccw rotation, walked through out-edges.
  // The out-edge at corner c of face f is slot (c+2)%3.
  m.corner_vertex_.assign(S, -1);
  auto corner_of_out = [](OrientedEdge e) { return 3 * (e / 3) + (e % 3 + 1) % 3; };
  for (int f = 0; f < F; ++f) {
    for (int c = 0; c < 3; ++c) {
      if (m.corner_vertex_[3 * f + c] >= 0) continue;
      const int v = m.n_vertices_++;
      OrientedEdge start = 3 * f + (c + 2) % 3;
      OrientedEdge e = start;
      std::vector<OrientedEdge> ring;
      do {
        m.corner_vertex_[corner_of_out(e)] = v;
        ring.push_back(e);
        e = m.out_ccw_next(e);
      } while (e != start);
      m.outgoing_.push_back(std::move(ring));
    }
  }
  m.out_index_.assign(S, -1);
  for (int v = 0; v < m.n_vertices_; ++v)
    for (int i = 0; i < static_cast<int>(m.outgoing_[v].size()); ++i)
      m.out_index_[m.outgoing_[v][i]] = i;

  const int chi = m.n_vertices_ - m.n_edges_ + m.n_faces_;
  require((2 - chi) % 2 == 0 && chi <= 2, ErrorKind::NonOrientable,
          "Euler characteristic " + std::to_string(chi) + " is not of the form 2-2g");
  m.genus_ = (2 - chi) / 2;
  return m;
}

EdgeWeights cotan_weights(const SurfaceMesh& mesh) {
  EdgeWeights w;
  w.c.resize(mesh.edge_count());
  for (Edge e = 0; e < mesh.edge_count(); ++e) {
    const OrientedEdge s = mesh.canonical(e);
    const double alpha = mesh.opposite_angle(s);
    const double beta = mesh.opposite_angle(mesh.opposite(s));
    w.c[e] = 0.5 * (1.0 / std::tan(alpha) + 1.0 / std::tan(beta));
  }
  return w;
}

GeometryReport geometry_report(const SurfaceMesh& mesh) {
  GeometryReport r;
  r.genus = mesh.genus();
  r.max_edge_length = 0;
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    r.max_edge_length = std::max(r.max_edge_length, mesh.edge_length(e));
  r.min_corner_angle = std::numbers::pi;
  r.aperture = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (Face f = 0; f < mesh.face_count(); ++f)
    for (int c = 0; c < 3; ++c) {
      const double a = mesh.corner_angle(f, c);
      r.min_corner_angle = std::min(r.min_corner_angle, a);
      r.aperture[mesh.corner_vertex(f, c)] += a;
    }
  r.gamma_z = (2 * std::numbers::pi) / r.aperture.array();
  r.gamma_s = std::min(1.0, r.gamma_z.minCoeff());
  r.condition_d_margin = std::numbers::pi;
  for (Edge e = 0; e < mesh.edge_count(); ++e) {
    const OrientedEdge s = mesh.canonical(e);
    const double sum = mesh.opposite_angle(s) + mesh.opposite_angle(mesh.opposite(s));
    r.condition_d_margin = std::min(r.condition_d_margin, std::numbers::pi - sum);
  }
  r.is_delaunay = r.condition_d_margin >= -1e-12;
  return r;
}

} // namespace drs
