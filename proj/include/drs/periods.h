#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drs/harmonic.h"

namespace drs {

struct PeriodBundle {
  int g = 0;
  Eigen::MatrixXd energy;       // 2g x 2g, symmetric positive definite
  Eigen::MatrixXcd pi_t;        // period matrix
  Eigen::MatrixXcd pi_t_star;   // dual period matrix
  Eigen::MatrixXcd pi_q;        // (pi_t + pi_t_star) / 2
  // measured structural defects
  double im_pi_t_asymmetry = 0;
  double re_transpose_defect = 0; // || Re pi_t_star - (Re pi_t)^T ||
  double min_eig_im_pi_t = 0;
  double min_eig_im_pi_t_star = 0;
};

// Gram matrix of Dirichlet energies of the harmonic fields with unit real
// period vectors: E_ij = pairing(solve(e_i), solve(e_j)).
Eigen::MatrixXd energy_matrix(const SurfaceMesh& mesh, const EdgeWeights& w,
                              const HomologyData& hd, double tol = 1e-10);

// Block algebra of the energy matrix E = [[E11,E12],[E21,E22]]:
//   Im pi_t_star = E22^-1,          Re pi_t      = -E22^-1 E21,
//   Re pi_t_star = -E12 E22^-1,     Im pi_t      = E11 - E12 E22^-1 E21.
PeriodBundle period_matrices_from_energy(const Eigen::MatrixXd& energy);

PeriodBundle compute_period_bundle(const SurfaceMesh& mesh, const EdgeWeights& w,
                                   const HomologyData& hd, double tol = 1e-10);

struct ValidationCheck {
  std::string name;
  double defect = 0;
  bool pass = false;
};
struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};
ValidationReport validate_period_bundle(const PeriodBundle& pb, double tol = 1e-8);

struct FirstKindIntegral {
  MultiValuedField field;
  Eigen::VectorXcd A; // prescribed A-periods
  Eigen::VectorXcd B; // resulting B-periods
};

// Discrete Abelian integrals of the first kind with prescribed complex
// A-periods. Caches the harmonic factorization and the period bundle.
class FirstKindSolver {
public:
  FirstKindSolver(const SurfaceMesh& mesh, const EdgeWeights& w, const HomologyData& hd,
                  Vertex anchor_vertex = 0, Face anchor_face = 0, double tol = 1e-10);

  const PeriodBundle& bundle() const { return bundle_; }
  const HarmonicSolver& harmonic() const { return solver_; }
  FirstKindIntegral solve(const Eigen::VectorXcd& A) const;

private:
  const SurfaceMesh& mesh_;
  const EdgeWeights& w_;
  const HomologyData& hd_;
  Face anchor_face_;
  double tol_;
  HarmonicSolver solver_;
  PeriodBundle bundle_;
};

FirstKindIntegral solve_first_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                   const HomologyData& hd, const Eigen::VectorXcd& A,
                                   Vertex anchor_vertex = 0, Face anchor_face = 0,
                                   double tol = 1e-10);

// Small-mesh oracle: the square |T^1|+2 system in the vertex values, face
// values and B-periods, solved densely. Independent of the energy route.
FirstKindIntegral solve_first_kind_direct(const SurfaceMesh& mesh, const EdgeWeights& w,
                                          const HomologyData& hd, const Eigen::VectorXcd& A,
                                          Vertex anchor_vertex = 0, Face anchor_face = 0,
                                          int max_edges = 4000);

// Riemann bilinear identity for a pair of multi-valued functions:
//   sum_e Dv'(e) Du(e)  =  sum_k (A_k B'_k - B_k A'_k)
// with u = Re f (periods p_re) and u' = Im f' (periods p_im').
struct BilinearReport {
  double lhs = 0, rhs = 0;
  double residual() const { return std::abs(lhs - rhs); }
};
BilinearReport riemann_bilinear_residual(const HomologyData& hd, const MultiValuedField& f,
                                         const MultiValuedField& f_prime);

// Energy conservation for first-kind integrals: E_T(Re f) = -Im sum A_k conj(B_k).
BilinearReport energy_conservation_residual(const EdgeWeights& w, const HomologyData& hd,
                                            const MultiValuedField& f);

// Im sum_k (A_k B'_k - B_k A'_k) for two first-kind integrals; zero by the
// symmetry lemma behind the Period Matrix Lemma.
double period_antisymmetry(const HomologyData& hd, const MultiValuedField& f,
                           const MultiValuedField& f_prime);

} // namespace drs
