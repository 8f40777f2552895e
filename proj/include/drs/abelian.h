#pragma once

#include <vector>

#include <Eigen/Dense>

#include "drs/periods.h"

namespace drs {

// Antisymmetric real function on oriented edges, stored on the canonical
// orientation. Discrete Abelian differentials of the third kind are exactly
// these; first-kind differentials are the subclass with all residues zero.
struct EdgeDifferential {
  Eigen::VectorXd omega; // per unoriented edge
  double at(const SurfaceMesh& mesh, OrientedEdge e) const {
    return mesh.orientation_sign(e) * omega[mesh.edge_of(e)];
  }
};

// Pair of single-valued conjugate-candidate parts; a discrete meromorphic
// function is such a pair with finitely many edges violating the
// Cauchy-Riemann coupling.
struct MeromorphicFunction {
  Eigen::VectorXd re; // per vertex
  Eigen::VectorXd im; // per face
};

struct Divisor {
  Eigen::VectorXi vertex, edge, face; // values in {-1, 0, +1}
  int degree() const { return vertex.sum() + edge.sum() + face.sum(); }
  bool admissible() const {
    return (vertex.array() <= 0).all() && (vertex.array() >= -1).all() &&
           (edge.array() >= 0).all() && (edge.array() <= 1).all() &&
           (face.array() <= 0).all() && (face.array() >= -1).all();
  }
  static Divisor zero(const SurfaceMesh& mesh) {
    Divisor d;
    d.vertex = Eigen::VectorXi::Zero(mesh.vertex_count());
    d.edge = Eigen::VectorXi::Zero(mesh.edge_count());
    d.face = Eigen::VectorXi::Zero(mesh.face_count());
    return d;
  }
};

// res_e f = Im f(r_e) - Im f(l_e) + c(e)(Re f(h_e) - Re f(t_e))
double edge_residue(const SurfaceMesh& mesh, const EdgeWeights& w, const MeromorphicFunction& f,
                    OrientedEdge e);
// transported-difference form for multi-valued fields
double edge_residue(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f,
                    OrientedEdge e);

struct SecondKindIntegral {
  MultiValuedField field; // vanishing A-periods, single pole at the edge
  Eigen::VectorXcd B;     // B-periods
  OrientedEdge pole = -1;
};

// Unique (up to constants) second-kind integral with vanishing A-periods and
// a single simple pole of residue 1 at the given oriented edge.
SecondKindIntegral solve_second_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                     const HomologyData& hd, OrientedEdge pole,
                                     Vertex anchor_vertex = 0, Face anchor_face = 0,
                                     double tol = 1e-10);

// differential of the real part: omega(e) = Du(e)
EdgeDifferential differential_of(const HomologyData& hd, const MultiValuedField& f);

struct Residues {
  // res_z = i * vertex[z]; vertex[z] = sum over edges into z of c(e) omega(e)
  Eigen::VectorXd vertex;
  // counterclockwise boundary integral per face
  Eigen::VectorXd face;
};
Residues residues(const SurfaceMesh& mesh, const EdgeWeights& w, const EdgeDifferential& omega);

// integral along a primal oriented-edge path (consecutive edges must chain)
double integrate(const SurfaceMesh& mesh, const EdgeDifferential& omega,
                 const std::vector<OrientedEdge>& path);
// integral along a chain of faces; crossings[i] is the oriented edge between
// face i and face i+1 of the chain, traversed from its left shore to its
// right shore, contributing c(e) omega(e)
double integrate_dual_chain(const SurfaceMesh& mesh, const EdgeWeights& w,
                            const EdgeDifferential& omega,
                            const std::vector<OrientedEdge>& crossings);

enum class CellKind { VertexCell, EdgeCell, FaceCell };
struct PolePair {
  CellKind kind = CellKind::VertexCell; // VertexCell or FaceCell
  int z = -1, w = -1;
};

// Unique third-kind differential with res_z = -res_w = i (vertex pair) or
// res_z = -res_w = 1 (face pair), all other residues and all real and
// imaginary A-periods vanishing.
EdgeDifferential solve_third_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                  const HomologyData& hd, const PolePair& poles,
                                  double tol = 1e-8);

// zero tests use threshold * (max magnitude of the function)
Divisor divisor_of(const SurfaceMesh& mesh, const EdgeWeights& w, const MeromorphicFunction& f,
                   double threshold = 1e-9);
Divisor divisor_of(const SurfaceMesh& mesh, const EdgeWeights& w, const EdgeDifferential& omega,
                   double threshold = 1e-9);

struct RiemannRochResult {
  int l_minus_d = 0;   // dim of meromorphic functions with divisor >= -D
  int i_d = 0;         // dim of third-kind differentials with divisor >= D
  int deg_d = 0;
  bool identity_holds = false; // l(-D) == deg D - 2g + 2 + i(D)
  int rank = 0, rows = 0, cols = 0;
};

RiemannRochResult riemann_roch(const SurfaceMesh& mesh, const EdgeWeights& w,
                               const HomologyData& hd, const Divisor& d, double tol = 1e-10);

// Independent oracle for i(D): nullspace dimension of the divisor constraints
// on antisymmetric edge functions, by dense rank.
int direct_i_dimension(const SurfaceMesh& mesh, const EdgeWeights& w, const Divisor& d,
                       int max_edges = 2000);

// rank with the singular-value cutoff 1e-8 * sigma_max and a spectral-gap
// validation; RankAmbiguous when the gap is below 10^3
int validated_rank(const Eigen::MatrixXd& m);

} // namespace drs
