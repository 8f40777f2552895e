#pragma once

#include <complex>
#include <vector>

#include "drs/surface_mesh.h"

namespace drs {

struct GeneratedSurface {
  SurfaceMesh mesh;
  // explicit homology basis, ordered alpha_1..alpha_g, beta_1..beta_g
  std::vector<std::vector<OrientedEdge>> basis_loops;
};

// Flat torus C/(Z + Z*eta), Im eta > 0, triangulated by an n x n grid of
// parallelograms each cut by its SE-NW diagonal. Basis loops are the two
// translation loops. Exact case: the period matrix equals eta for every n.
GeneratedSurface flat_torus(std::complex<double> eta, int n);

// Side surface of a square pyramid with equilateral lateral faces (all edge
// lengths 1), opposite sides of the base identified with orientation
// reversal. Genus 1, two vertices.
GeneratedSurface pyramid();

// Genus-2 surface glued from 3 unit squares (an L-shaped domain with
// translation identifications), triangulated by subsquares of side 2/n with
// SW-NE diagonals; n must be even so the basis loops lie on grid lines.
//
// Squares, in unit coordinates: A = [0,1]x[0,1], B = [1,2]x[0,1],
// C = [1,2]x[1,2]. Side identifications (all translations):
//   A.top    ~ A.bottom     (x,1) ~ (x,0),  x in [0,1]
//   C.top    ~ B.bottom     (x,2) ~ (x,0),  x in [1,2]
//   A.left   ~ B.right      (0,y) ~ (2,y),  y in [0,1]
//   C.left   ~ C.right      (1,y) ~ (2,y),  y in [1,2]
// All eight square corners are identified to a single cone point of total
// angle 6*pi, so gamma_S = 1/3. Basis loops: alpha_1 = the vertical loop up
// through B.right and C.left, alpha_2 = C.left upward, beta_1 = the bottom
// row leftward, beta_2 = A.top rightward; the reference period matrix in
// this basis is (i/3)[[5,-4],[-4,5]].
GeneratedSurface genus2_squares(int n);

} // namespace drs
