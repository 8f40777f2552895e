#pragma once

#include <vector>

#include <Eigen/Dense>

#include "drs/surface_mesh.h"

namespace drs {

// Symplectic homology basis plus the primal/dual period cocycles that encode
// multi-valuedness without passing to the universal cover.
//
// Primal loops are oriented-edge sequences with head(e_i) = tail(e_{i+1}),
// closed cyclically. Dual loops are crossing sequences: each entry is an
// oriented edge crossed from its right shore to its left shore, consecutive
// crossings satisfying left(x_i) = right(x_{i+1}).
struct HomologyData {
  int genus = 0;
  // 2g loops, ordered alpha_1..alpha_g, beta_1..beta_g
  std::vector<std::vector<OrientedEdge>> basis_cycles;
  // algebraic intersection numbers of the basis cycles; equals [[0,I],[-I,0]]
  Eigen::MatrixXi intersection;
  // per unoriented edge (canonical orientation), one 2g row each
  Eigen::MatrixXd kappa;      // primal period cocycle
  Eigen::MatrixXd kappa_star; // dual period cocycle
  // 2g face loops homologous to the basis cycles
  std::vector<std::vector<OrientedEdge>> dual_basis_loops;

  const SurfaceMesh* mesh = nullptr;

  // cocycle values on an oriented edge
  Eigen::RowVectorXd kappa_at(OrientedEdge e) const {
    return mesh->orientation_sign(e) * kappa.row(mesh->edge_of(e));
  }
  Eigen::RowVectorXd kappa_star_at(OrientedEdge e) const {
    return mesh->orientation_sign(e) * kappa_star.row(mesh->edge_of(e));
  }
};

// Tree-cotree homology basis with integer symplectic normalization, and the
// cocycles kappa/kappa_star solving the face/vertex closedness conditions with
// unit periods along the basis. Deterministic for a given mesh.
HomologyData homology_basis(const SurfaceMesh& mesh);

// Same, but adopting the given loops (ordered alpha_1..alpha_g, beta_1..beta_g)
// as the basis. Their intersection matrix must equal [[0,I],[-I,0]].
HomologyData homology_basis(const SurfaceMesh& mesh,
                            const std::vector<std::vector<OrientedEdge>>& loops);

// Homology class of a closed primal loop, evaluated through kappa.
Eigen::VectorXi loop_class(const HomologyData& hd, const std::vector<OrientedEdge>& loop);
// Homology class of a closed dual (face) loop, evaluated through kappa_star.
Eigen::VectorXi dual_loop_class(const HomologyData& hd, const std::vector<OrientedEdge>& loop);

// Signed count of crossings between two closed primal loops (positive when b
// crosses a from the right shore to the left shore). Shared edges and
// repeated traversals are handled by half-integer corner contributions.
int loops_intersection(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& a,
                       const std::vector<OrientedEdge>& b);

// Face loop running parallel to a primal loop on its left side.
std::vector<OrientedEdge> left_shift_to_dual_loop(const SurfaceMesh& mesh,
                                                  const std::vector<OrientedEdge>& loop);

void check_primal_loop(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& loop);
void check_dual_loop(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& loop);

} // namespace drs
