#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "drs/harmonic.h"

namespace drs {

// Per-face circumscribed disk data, computed in the face's own planar chart
// (corner 0 at the origin, corner 1 on the positive real axis, corner 2 in
// the upper half plane).
struct Circumcenters {
  std::vector<std::complex<double>> center; // per face
  Eigen::VectorXd radius;                   // per face
  double h_prime = 0;                       // 2 * max radius
};
Circumcenters circumcenters(const SurfaceMesh& mesh);

// Delaunay-Voronoi quadrangulation: one kite per edge, spanned by the edge's
// endpoints and the two adjacent circumcenters, developed into a per-edge
// chart. Chart points follow the canonical orientation of the edge:
//   z1 = tail, z2 = left circumcenter, z3 = head, z4 = right circumcenter,
// with z1 = 0 and z3 = (length, 0); counterclockwise traversal of the kite is
// z1 z4 z3 z2.
struct QuadSurface {
  const SurfaceMesh* mesh = nullptr;
  std::vector<std::array<std::complex<double>, 4>> chart; // per unoriented edge
  Eigen::VectorXd area;                                   // per quad
  double total_area = 0;
};
QuadSurface build_quad_surface(const SurfaceMesh& mesh, const EdgeWeights& w);

// Function on quad vertices: black values on mesh vertices, white values on
// circumcenters. to_quad_function realizes u + iv as black = u, white = i v.
struct QuadFunction {
  Eigen::VectorXcd black; // per vertex
  Eigen::VectorXcd white; // per face
};
QuadFunction to_quad_function(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// multi-valued variant; black/white periods are 2g complex vectors (A then B)
struct MultiValuedQuadFunction {
  QuadFunction base;
  Eigen::VectorXcd black_periods; // bold A_k, bold B_k
  Eigen::VectorXcd white_periods; // blackboard A_k, blackboard B_k
};
MultiValuedQuadFunction to_quad_function(const HomologyData& hd, const MultiValuedField& f);

// difference quotient mismatch along the two diagonals of each quad
Eigen::VectorXcd quad_analyticity_residuals(const QuadSurface& q, const QuadFunction& f);
Eigen::VectorXcd quad_analyticity_residuals(const QuadSurface& q, const HomologyData& hd,
                                            const MultiValuedQuadFunction& f);

// quad-surface Riemann bilinear identity residual |LHS - RHS|
double quad_bilinear_residual(const QuadSurface& q, const HomologyData& hd,
                              const MultiValuedQuadFunction& f,
                              const MultiValuedQuadFunction& f_prime);

} // namespace drs
