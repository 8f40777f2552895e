#include "drs/periods.h"

#include <cmath>

namespace drs {

Eigen::MatrixXd energy_matrix(const SurfaceMesh& mesh, const EdgeWeights& w,
                              const HomologyData& hd, double tol) {
  const int n = 2 * hd.genus;
  HarmonicSolver solver(mesh, w, hd, 0, tol);
  std::vector<MultiValuedField> basis;
  basis.reserve(n);
  for (int i = 0; i < n; ++i) basis.push_back(solver.solve(Eigen::VectorXd::Unit(n, i)));
  Eigen::MatrixXd E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) E(i, j) = E(j, i) = energy_pairing(w, hd, basis[i], basis[j]);
  return E;
}

PeriodBundle period_matrices_from_energy(const Eigen::MatrixXd& energy) {
  const int n = static_cast<int>(energy.rows());
  require(n == energy.cols() && n % 2 == 0 && n >= 2, ErrorKind::InvalidArgument,
          "energy matrix must be square of even dimension");
  require((energy - energy.transpose()).norm() <= 1e-8 * std::max(1.0, energy.norm()),
          ErrorKind::InvalidArgument, "energy matrix is not symmetric");
  const int g = n / 2;
  const Eigen::MatrixXd E11 = energy.topLeftCorner(g, g);
  const Eigen::MatrixXd E12 = energy.topRightCorner(g, g);
  const Eigen::MatrixXd E21 = energy.bottomLeftCorner(g, g);
  const Eigen::MatrixXd E22 = energy.bottomRightCorner(g, g);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(E22);
  require(lu.isInvertible(), ErrorKind::SingularBlock,
          "B-period block of the energy matrix is singular");

  PeriodBundle pb;
  pb.g = g;
  pb.energy = 0.5 * (energy + energy.transpose());
  const Eigen::MatrixXd im_pi_t_star = lu.inverse();
  const Eigen::MatrixXd re_pi_t = -lu.solve(E21);
  const Eigen::MatrixXd re_pi_t_star = -(E12 * im_pi_t_star);
  const Eigen::MatrixXd im_pi_t = E11 - E12 * lu.solve(E21);

  const std::complex<double> I(0, 1);
  pb.pi_t = re_pi_t.cast<std::complex<double>>() + I * im_pi_t.cast<std::complex<double>>();
  pb.pi_t_star =
      re_pi_t_star.cast<std::complex<double>>() + I * im_pi_t_star.cast<std::complex<double>>();
  pb.pi_q = 0.5 * (pb.pi_t + pb.pi_t_star);

  pb.im_pi_t_asymmetry = (im_pi_t - im_pi_t.transpose()).norm();
  pb.re_transpose_defect = (re_pi_t_star - re_pi_t.transpose()).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(0.5 * (im_pi_t + im_pi_t.transpose()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(
      0.5 * (im_pi_t_star + im_pi_t_star.transpose()));
  pb.min_eig_im_pi_t = es1.eigenvalues().minCoeff();
  pb.min_eig_im_pi_t_star = es2.eigenvalues().minCoeff();
  return pb;
}

PeriodBundle compute_period_bundle(const SurfaceMesh& mesh, const EdgeWeights& w,
                                   const HomologyData& hd, double tol) {
  return period_matrices_from_energy(energy_matrix(mesh, w, hd, tol));
}

ValidationReport validate_period_bundle(const PeriodBundle& pb, double tol) {
  ValidationReport r;
  const double scale = std::max(1.0, pb.pi_t.norm());
  auto push = [&](const std::string& name, double defect, bool pass) {
    r.checks.push_back({name, defect, pass});
  };
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (pb.energy + pb.energy.transpose()));
    const double mn = es.eigenvalues().minCoeff();
    push("energy symmetric", (pb.energy - pb.energy.transpose()).norm(),
         (pb.energy - pb.energy.transpose()).norm() <= tol * std::max(1.0, pb.energy.norm()));
    push("energy positive definite", mn, mn > 0);
  }
  push("Im pi_t symmetric", pb.im_pi_t_asymmetry, pb.im_pi_t_asymmetry <= tol * scale);
  {
    const Eigen::MatrixXcd d = pb.pi_t_star - pb.pi_t_star.transpose();
    const double asym = d.imag().norm();
    push("Im pi_t_star symmetric", asym, asym <= tol * scale);
  }
  push("Im pi_t positive definite", pb.min_eig_im_pi_t, pb.min_eig_im_pi_t > 0);
  push("Im pi_t_star positive definite", pb.min_eig_im_pi_t_star, pb.min_eig_im_pi_t_star > 0);
  push("Re pi_t_star = (Re pi_t)^T", pb.re_transpose_defect,
       pb.re_transpose_defect <= tol * scale);
  {
    const double asym = (pb.pi_q - pb.pi_q.transpose()).norm();
    push("pi_q symmetric", asym, asym <= tol * scale);
    Eigen::MatrixXd imq = pb.pi_q.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (imq + imq.transpose()));
    push("Im pi_q positive definite", es.eigenvalues().minCoeff(),
         es.eigenvalues().minCoeff() > 0);
  }
  return r;
}

FirstKindSolver::FirstKindSolver(const SurfaceMesh& mesh, const EdgeWeights& w,
                                 const HomologyData& hd, Vertex anchor_vertex, Face anchor_face,
                                 double tol)
    : mesh_(mesh), w_(w), hd_(hd), anchor_face_(anchor_face), tol_(tol),
      solver_(mesh, w, hd, anchor_vertex, tol) {
  bundle_ = period_matrices_from_energy(energy_matrix(mesh, w, hd, tol));
}

FirstKindIntegral FirstKindSolver::solve(const Eigen::VectorXcd& A) const {
  const int g = hd_.genus;
  require(A.size() == g, ErrorKind::InvalidArgument, "A-period vector has wrong size");
  const Eigen::VectorXd re_a = A.real(), im_a = A.imag();
  const Eigen::VectorXd re_b =
      bundle_.pi_t.real() * re_a - bundle_.pi_t_star.imag() * im_a;
  Eigen::VectorXd p_re(2 * g);
  p_re << re_a, re_b;
  MultiValuedField f = solver_.solve(p_re);
  f = conjugate_function(mesh_, w_, hd_, f, anchor_face_, std::max(tol_, 1e-10) * 100);

  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  require((f.p_im.head(g) - im_a).cwiseAbs().maxCoeff() <= 1e-8 * scale,
          ErrorKind::ConsistencyFailure,
          "computed Im A-periods do not match the prescription");
  f.p_im.head(g) = im_a; // replace the read-off values by the exact prescription

  FirstKindIntegral out;
  out.A = A;
  out.B = re_b.cast<std::complex<double>>() +
          std::complex<double>(0, 1) * f.p_im.tail(g).cast<std::complex<double>>();
  out.field = std::move(f);
  return out;
}

FirstKindIntegral solve_first_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                   const HomologyData& hd, const Eigen::VectorXcd& A,
                                   Vertex anchor_vertex, Face anchor_face, double tol) {
  return FirstKindSolver(mesh, w, hd, anchor_vertex, anchor_face, tol).solve(A);
}

FirstKindIntegral solve_first_kind_direct(const SurfaceMesh& mesh, const EdgeWeights& w,
                                          const HomologyData& hd, const Eigen::VectorXcd& A,
                                          Vertex anchor_vertex, Face anchor_face,
                                          int max_edges) {
  const int g = hd.genus, V = mesh.vertex_count(), F = mesh.face_count(), E = mesh.edge_count();
  require(E <= max_edges, ErrorKind::TooLarge, "direct route is a small-mesh oracle");
  require(A.size() == g, ErrorKind::InvalidArgument, "A-period vector has wrong size");

  // unknowns: u (V), v (F), Re B (g), Im B (g)
  const int N = V + F + 2 * g;
  const int iu = 0, iv = V, irb = V + F, iib = V + F + g;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(E + 2, N);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(E + 2);

  for (Edge e = 0; e < E; ++e) {
    const OrientedEdge ce = mesh.canonical(e);
    const auto ks = hd.kappa_star_at(ce);
    const auto kp = hd.kappa_at(ce);
    const double c = w[e];
    // Dv(ce) - c Du(ce) = 0 with the A-period parts moved to the right
    M(e, iv + mesh.left(ce)) += 1;
    M(e, iv + mesh.right(ce)) -= 1;
    M(e, iu + mesh.head(ce)) -= c;
    M(e, iu + mesh.tail(ce)) += c;
    for (int k = 0; k < g; ++k) {
      M(e, iib + k) += ks[g + k];
      M(e, irb + k) -= c * kp[g + k];
    }
    rhs[e] = -ks.head(g).dot(A.imag()) + c * kp.head(g).dot(A.real());
  }
  M(E, iu + anchor_vertex) = 1;
  M(E + 1, iv + anchor_face) = 1;

  Eigen::VectorXd x = M.completeOrthogonalDecomposition().solve(rhs);
  const double res = (M * x - rhs).norm();
  require(res <= 1e-8 * std::max(1.0, rhs.norm()), ErrorKind::SolverFailure,
          "direct first-kind system residual too large");

  FirstKindIntegral out;
  out.A = A;
  out.field.u_base = x.segment(iu, V);
  out.field.v_base = x.segment(iv, F);
  out.field.p_re = Eigen::VectorXd(2 * g);
  out.field.p_im = Eigen::VectorXd(2 * g);
  out.field.p_re << A.real(), x.segment(irb, g);
  out.field.p_im << A.imag(), x.segment(iib, g);
  out.B = x.segment(irb, g).cast<std::complex<double>>() +
          std::complex<double>(0, 1) * x.segment(iib, g).cast<std::complex<double>>();
  return out;
}

BilinearReport riemann_bilinear_residual(const HomologyData& hd, const MultiValuedField& f,
                                         const MultiValuedField& f_prime) {
  const SurfaceMesh& m = *hd.mesh;
  const int g = hd.genus;
  BilinearReport r;
  for (Edge e = 0; e < m.edge_count(); ++e) {
    const OrientedEdge ce = m.canonical(e);
    r.lhs += dual_difference(hd, f_prime, ce) * edge_difference(hd, f, ce);
  }
  for (int k = 0; k < g; ++k)
    r.rhs += f.p_re[k] * f_prime.p_im[g + k] - f.p_re[g + k] * f_prime.p_im[k];
  return r;
}

BilinearReport energy_conservation_residual(const EdgeWeights& w, const HomologyData& hd,
                                            const MultiValuedField& f) {
  const int g = hd.genus;
  BilinearReport r;
  r.lhs = dirichlet_energy(w, hd, f);
  for (int k = 0; k < g; ++k)
    r.rhs += f.p_re[k] * f.p_im[g + k] - f.p_im[k] * f.p_re[g + k];
  return r;
}

double period_antisymmetry(const HomologyData& hd, const MultiValuedField& f,
                           const MultiValuedField& f_prime) {
  const int g = hd.genus;
  const std::complex<double> I(0, 1);
  std::complex<double> s = 0;
  for (int k = 0; k < g; ++k) {
    const std::complex<double> a = f.p_re[k] + I * f.p_im[k];
    const std::complex<double> b = f.p_re[g + k] + I * f.p_im[g + k];
    const std::complex<double> ap = f_prime.p_re[k] + I * f_prime.p_im[k];
    const std::complex<double> bp = f_prime.p_re[g + k] + I * f_prime.p_im[g + k];
    s += a * bp - b * ap;
  }
  return s.imag();
}

} // namespace drs
