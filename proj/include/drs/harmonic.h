#pragma once

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "drs/homology.h"
#include "drs/surface_mesh.h"

namespace drs {

// Multi-valued function represented by single-valued base values plus a real
// period vector per part; the cocycles kappa/kappa_star supply the transport.
// p_re = (Re A_1..Re A_g, Re B_1..Re B_g), p_im likewise for the imaginary
// part. The imaginary part (v_base, p_im) may be absent.
struct MultiValuedField {
  Eigen::VectorXd u_base; // per vertex
  Eigen::VectorXd p_re;   // 2g
  Eigen::VectorXd v_base; // per face; empty if the field is purely real
  Eigen::VectorXd p_im;   // 2g; empty together with v_base

  bool has_imaginary() const { return v_base.size() > 0; }
};

// Du(e) = u(head) - u(tail) + p_re . kappa(e)
double edge_difference(const HomologyData& hd, const MultiValuedField& f, OrientedEdge e);
// Dv(e) = v(left) - v(right) + p_im . kappa_star(e)
double dual_difference(const HomologyData& hd, const MultiValuedField& f, OrientedEdge e);

// E_T(u) = sum_e c(e) Du(e)^2
double dirichlet_energy(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f);
// E_T(v) = sum_e Dv(e)^2 / c(e); requires c(e) != 0 on every edge
double dual_energy(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f);
// polarization sum_e c(e) Du1(e) Du2(e)
double energy_pairing(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f1,
                      const MultiValuedField& f2);

// max over vertices of |sum_{e out of z} c(e) Du(e)|
double harmonic_residual(const EdgeWeights& w, const HomologyData& hd,
                         const MultiValuedField& f);

// Discrete harmonic multi-valued function with prescribed real period vector,
// pinned to zero at an anchor vertex. The cotan Laplacian is positive
// semidefinite with constant kernel (energy positivity holds also with
// negative weights), so the pinned system is SPD; factored once and reused.
class HarmonicSolver {
public:
  HarmonicSolver(const SurfaceMesh& mesh, const EdgeWeights& w, const HomologyData& hd,
                 Vertex anchor = 0, double tol = 1e-10);
  ~HarmonicSolver();
  HarmonicSolver(HarmonicSolver&&) noexcept;

  MultiValuedField solve(const Eigen::VectorXd& p_re) const;
  Vertex anchor() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MultiValuedField solve_harmonic(const SurfaceMesh& mesh, const EdgeWeights& w,
                                const HomologyData& hd, const Eigen::VectorXd& p_re,
                                Vertex anchor = 0, double tol = 1e-10);

// Conjugate imaginary part of a discrete harmonic field: fills v_base and
// p_im so that Dv(e) = c(e) Du(e) on every oriented edge. p_im is read off by
// integrating c Du along the 2g dual basis loops; v is integrated over a dual
// spanning tree and every co-tree edge is then checked for consistency.
MultiValuedField conjugate_function(const SurfaceMesh& mesh, const EdgeWeights& w,
                                    const HomologyData& hd, const MultiValuedField& f_real,
                                    Face anchor_face = 0, double tol = 1e-8);

// Dirichlet energy of the linear interpolant with the given corner values on
// a flat triangle; side s lies opposite corner s.
double triangle_interpolation_energy(double l0, double l1, double l2, double u0, double u1,
                                     double u2);
double triangle_interpolation_energy(const SurfaceMesh& mesh, Face f, double u0, double u1,
                                     double u2);

} // namespace drs
