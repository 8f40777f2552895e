#include "drs/harmonic.h"

#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace drs {

double edge_difference(const HomologyData& hd, const MultiValuedField& f, OrientedEdge e) {
  const SurfaceMesh& m = *hd.mesh;
  return f.u_base[m.head(e)] - f.u_base[m.tail(e)] + hd.kappa_at(e).dot(f.p_re);
}

double dual_difference(const HomologyData& hd, const MultiValuedField& f, OrientedEdge e) {
  require(f.has_imaginary(), ErrorKind::MissingImaginaryPart,
          "field has no imaginary part");
  const SurfaceMesh& m = *hd.mesh;
  return f.v_base[m.left(e)] - f.v_base[m.right(e)] + hd.kappa_star_at(e).dot(f.p_im);
}

double dirichlet_energy(const EdgeWeights& w, const HomologyData& hd,
                        const MultiValuedField& f) {
  const SurfaceMesh& m = *hd.mesh;
  double s = 0;
  for (Edge e = 0; e < m.edge_count(); ++e) {
    const double du = edge_difference(hd, f, m.canonical(e));
    s += w[e] * du * du;
  }
  return s;
}

double dual_energy(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f) {
  const SurfaceMesh& m = *hd.mesh;
  const double cmax = w.c.cwiseAbs().maxCoeff();
  double s = 0;
  for (Edge e = 0; e < m.edge_count(); ++e) {
    require(std::abs(w[e]) > 1e-12 * cmax, ErrorKind::ZeroWeightEdge,
            "edge " + std::to_string(e) + " has vanishing cotan weight");
    const double dv = dual_difference(hd, f, m.canonical(e));
    s += dv * dv / w[e];
  }
  return s;
}

double energy_pairing(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f1,
                      const MultiValuedField& f2) {
  const SurfaceMesh& m = *hd.mesh;
  double s = 0;
  for (Edge e = 0; e < m.edge_count(); ++e) {
    const OrientedEdge c = m.canonical(e);
    s += w[e] * edge_difference(hd, f1, c) * edge_difference(hd, f2, c);
  }
  return s;
}

double harmonic_residual(const EdgeWeights& w, const HomologyData& hd,
                         const MultiValuedField& f) {
  const SurfaceMesh& m = *hd.mesh;
  double worst = 0;
  for (Vertex z = 0; z < m.vertex_count(); ++z) {
    double r = 0;
    for (OrientedEdge e : m.outgoing(z)) r += w[m.edge_of(e)] * edge_difference(hd, f, e);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

struct HarmonicSolver::Impl {
  const SurfaceMesh& mesh;
  const EdgeWeights& w;
  const HomologyData& hd;
  Vertex anchor;
  double tol;
  Eigen::SparseMatrix<double> L; // anchor row/column removed
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool ldlt_ok = false;

  int reduced(Vertex v) const { return v < anchor ? v : v - 1; }

  Impl(const SurfaceMesh& mesh_, const EdgeWeights& w_, const HomologyData& hd_, Vertex anchor_,
       double tol_)
      : mesh(mesh_), w(w_), hd(hd_), anchor(anchor_), tol(tol_) {
    const int V = mesh.vertex_count();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(4 * mesh.edge_count());
    for (Edge e = 0; e < mesh.edge_count(); ++e) {
      const OrientedEdge ce = mesh.canonical(e);
      const Vertex a = mesh.tail(ce), b = mesh.head(ce);
      if (a == b) continue; // self-gluing, cancels in the divergence
      const double c = w[e];
      if (a != anchor) trip.emplace_back(reduced(a), reduced(a), c);
      if (b != anchor) trip.emplace_back(reduced(b), reduced(b), c);
      if (a != anchor && b != anchor) {
        trip.emplace_back(reduced(a), reduced(b), -c);
        trip.emplace_back(reduced(b), reduced(a), -c);
      }
    }
    L.resize(V - 1, V - 1);
    L.setFromTriplets(trip.begin(), trip.end());
    if (V > 1) {
      ldlt.compute(L);
      ldlt_ok = ldlt.info() == Eigen::Success;
    }
  }

  // right-hand side of L u = b for the period vector p: b(z) = sum over edges
  // out of z of c(e) * (p . kappa(e))
  Eigen::VectorXd rhs(const Eigen::VectorXd& p) const {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.vertex_count());
    for (Vertex z = 0; z < mesh.vertex_count(); ++z)
      for (OrientedEdge e : mesh.outgoing(z))
        b[z] += w[mesh.edge_of(e)] * hd.kappa_at(e).dot(p);
    return b;
  }

  Eigen::VectorXd solve_reduced(const Eigen::VectorXd& br) const {
    if (br.size() == 0) return br;
    const double scale = std::max(br.norm(), 1e-300);
    if (ldlt_ok) {
      Eigen::VectorXd u = ldlt.solve(br);
      if ((L * u - br).norm() <= tol * scale) return u;
    }
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(20 * L.rows());
    cg.compute(L);
    Eigen::VectorXd u = cg.solve(br);
    if ((L * u - br).norm() <= tol * scale * 10) return u;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(L);
    if (lu.info() == Eigen::Success) {
      u = lu.solve(br);
      if ((L * u - br).norm() <= tol * scale * 10) return u;
    }
    fail(ErrorKind::SolverFailure, "harmonic solve did not reach tolerance");
  }
};

HarmonicSolver::HarmonicSolver(const SurfaceMesh& mesh, const EdgeWeights& w,
                               const HomologyData& hd, Vertex anchor, double tol)
    : impl_(std::make_unique<Impl>(mesh, w, hd, anchor, tol)) {
  require(anchor >= 0 && anchor < mesh.vertex_count(), ErrorKind::InvalidArgument,
          "anchor vertex out of range");
}

HarmonicSolver::~HarmonicSolver() = default;
HarmonicSolver::HarmonicSolver(HarmonicSolver&&) noexcept = default;
Vertex HarmonicSolver::anchor() const { return impl_->anchor; }

MultiValuedField HarmonicSolver::solve(const Eigen::VectorXd& p_re) const {
  const Impl& im = *impl_;
  require(p_re.size() == 2 * im.hd.genus, ErrorKind::InvalidArgument,
          "period vector has wrong size");
  const int V = im.mesh.vertex_count();
  Eigen::VectorXd b = im.rhs(p_re);
  Eigen::VectorXd br(V - 1);
  for (Vertex z = 0; z < V; ++z)
    if (z != im.anchor) br[im.reduced(z)] = b[z];
  const Eigen::VectorXd ur = im.solve_reduced(br);
  MultiValuedField f;
  f.u_base = Eigen::VectorXd::Zero(V);
  for (Vertex z = 0; z < V; ++z)
    if (z != im.anchor) f.u_base[z] = ur[im.reduced(z)];
  f.p_re = p_re;
  return f;
}

MultiValuedField solve_harmonic(const SurfaceMesh& mesh, const EdgeWeights& w,
                                const HomologyData& hd, const Eigen::VectorXd& p_re,
                                Vertex anchor, double tol) {
  return HarmonicSolver(mesh, w, hd, anchor, tol).solve(p_re);
}

MultiValuedField conjugate_function(const SurfaceMesh& mesh, const EdgeWeights& w,
                                    const HomologyData& hd, const MultiValuedField& f_real,
                                    Face anchor_face, double tol) {
  require(anchor_face >= 0 && anchor_face < mesh.face_count(), ErrorKind::InvalidArgument,
          "anchor face out of range");
  const int n = 2 * hd.genus;

  double scale = 1;
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    scale = std::max(scale, std::abs(w[e] * edge_difference(hd, f_real, mesh.canonical(e))));
  require(harmonic_residual(w, hd, f_real) <= tol * scale, ErrorKind::NotHarmonic,
          "field is not discrete harmonic; no conjugate exists");

  MultiValuedField f = f_real;
  f.p_im = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    for (OrientedEdge x : hd.dual_basis_loops[j])
      f.p_im[j] += w[mesh.edge_of(x)] * edge_difference(hd, f_real, x);

  // integrate v over a dual spanning tree grown from the anchor face
  f.v_base = Eigen::VectorXd::Zero(mesh.face_count());
  std::vector<char> seen(mesh.face_count(), 0);
  std::vector<Face> order{anchor_face};
  seen[anchor_face] = 1;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    const Face fa = order[qi];
    for (int s = 0; s < 3; ++s) {
      const OrientedEdge x = mesh.opposite(3 * fa + s); // crossed from fa into left(x)
      const Face g = mesh.left(x);
      if (seen[g]) continue;
      seen[g] = 1;
      f.v_base[g] = f.v_base[fa] + w[mesh.edge_of(x)] * edge_difference(hd, f_real, x) -
                    hd.kappa_star_at(x).dot(f.p_im);
      order.push_back(g);
    }
  }

  // every co-tree edge must close up
  for (Edge e = 0; e < mesh.edge_count(); ++e) {
    const OrientedEdge ce = mesh.canonical(e);
    const double defect =
        dual_difference(hd, f, ce) - w[e] * edge_difference(hd, f_real, ce);
    require(std::abs(defect) <= tol * scale, ErrorKind::NotHarmonic,
            "conjugate integration inconsistent on edge " + std::to_string(e));
  }
  return f;
}

double triangle_interpolation_energy(double l0, double l1, double l2, double u0, double u1,
                                     double u2) {
  auto cot_at = [&](double a, double b, double c) {
    // cotangent of the angle opposite side a
    const double cosv = (b * b + c * c - a * a) / (2 * b * c);
    return cosv / std::sqrt(std::max(1e-300, 1 - cosv * cosv));
  };
  const double d0 = u1 - u2, d1 = u2 - u0, d2 = u0 - u1;
  return 0.5 * (cot_at(l0, l1, l2) * d0 * d0 + cot_at(l1, l2, l0) * d1 * d1 +
                cot_at(l2, l0, l1) * d2 * d2);
}

double triangle_interpolation_energy(const SurfaceMesh& mesh, Face f, double u0, double u1,
                                     double u2) {
  return triangle_interpolation_energy(mesh.length(3 * f), mesh.length(3 * f + 1),
                                       mesh.length(3 * f + 2), u0, u1, u2);
}

} // namespace drs
