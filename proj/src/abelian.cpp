#include "drs/abelian.h"

#include <cmath>

#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace drs {

double edge_residue(const SurfaceMesh& mesh, const EdgeWeights& w, const MeromorphicFunction& f,
                    OrientedEdge e) {
  return f.im[mesh.right(e)] - f.im[mesh.left(e)] +
         w[mesh.edge_of(e)] * (f.re[mesh.head(e)] - f.re[mesh.tail(e)]);
}

double edge_residue(const EdgeWeights& w, const HomologyData& hd, const MultiValuedField& f,
                    OrientedEdge e) {
  return -dual_difference(hd, f, e) + w[hd.mesh->edge_of(e)] * edge_difference(hd, f, e);
}

EdgeDifferential differential_of(const HomologyData& hd, const MultiValuedField& f) {
  const SurfaceMesh& m = *hd.mesh;
  EdgeDifferential d;
  d.omega.resize(m.edge_count());
  for (Edge e = 0; e < m.edge_count(); ++e)
    d.omega[e] = edge_difference(hd, f, m.canonical(e));
  return d;
}

Residues residues(const SurfaceMesh& mesh, const EdgeWeights& w, const EdgeDifferential& omega) {
  Residues r;
  r.vertex = Eigen::VectorXd::Zero(mesh.vertex_count());
  r.face = Eigen::VectorXd::Zero(mesh.face_count());
  for (Vertex z = 0; z < mesh.vertex_count(); ++z)
    for (OrientedEdge out : mesh.outgoing(z)) {
      const OrientedEdge e = mesh.opposite(out); // head z
      r.vertex[z] += w[mesh.edge_of(e)] * omega.at(mesh, e);
    }
  for (Face f = 0; f < mesh.face_count(); ++f)
    for (int s = 0; s < 3; ++s) r.face[f] += omega.at(mesh, 3 * f + s);
  return r;
}

double integrate(const SurfaceMesh& mesh, const EdgeDifferential& omega,
                 const std::vector<OrientedEdge>& path) {
  require(!path.empty(), ErrorKind::InvalidArgument, "empty path");
  double s = omega.at(mesh, path[0]);
  for (size_t i = 1; i < path.size(); ++i) {
    require(mesh.head(path[i - 1]) == mesh.tail(path[i]), ErrorKind::BrokenChain,
            "primal path breaks at step " + std::to_string(i));
    s += omega.at(mesh, path[i]);
  }
  return s;
}

double integrate_dual_chain(const SurfaceMesh& mesh, const EdgeWeights& w,
                            const EdgeDifferential& omega,
                            const std::vector<OrientedEdge>& crossings) {
  require(!crossings.empty(), ErrorKind::InvalidArgument, "empty chain");
  double s = w[mesh.edge_of(crossings[0])] * omega.at(mesh, crossings[0]);
  for (size_t i = 1; i < crossings.size(); ++i) {
    require(mesh.right(crossings[i - 1]) == mesh.left(crossings[i]), ErrorKind::BrokenChain,
            "face chain breaks at step " + std::to_string(i));
    s += w[mesh.edge_of(crossings[i])] * omega.at(mesh, crossings[i]);
  }
  return s;
}

SecondKindIntegral solve_second_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                     const HomologyData& hd, OrientedEdge pole,
                                     Vertex anchor_vertex, Face anchor_face, double tol) {
  const int g = hd.genus, n = 2 * g;
  require(pole >= 0 && pole < mesh.oriented_edge_count(), ErrorKind::InvalidArgument,
          "pole edge out of range");
  const Edge pe = mesh.edge_of(pole);
  const double pole_sign = mesh.orientation_sign(pole);

  // Re phi_e is harmonic away from the pole endpoints, where the conjugacy
  // defect injects unit divergence: sum_{e into z} c Du = [z=head] - [z=tail].
  HarmonicSolver solver(mesh, w, hd, anchor_vertex, tol);
  std::vector<MultiValuedField> basis; // real B-period basis fields
  for (int k = 0; k < g; ++k) basis.push_back(solver.solve(Eigen::VectorXd::Unit(n, g + k)));

  MultiValuedField src;
  src.p_re = Eigen::VectorXd::Zero(n);
  {
    // pinned Laplacian solve with the two point sources
    Eigen::VectorXd q = Eigen::VectorXd::Zero(mesh.vertex_count());
    q[mesh.head(pole)] += 1;
    q[mesh.tail(pole)] -= 1;
    // reuse HarmonicSolver's matrix through a one-off solve: assemble the
    // same reduced system here
    std::vector<Eigen::Triplet<double>> trip;
    const Vertex a0 = anchor_vertex;
    auto red = [a0](Vertex v) { return v < a0 ? v : v - 1; };
    for (Edge e = 0; e < mesh.edge_count(); ++e) {
      const OrientedEdge ce = mesh.canonical(e);
      const Vertex a = mesh.tail(ce), b = mesh.head(ce);
      if (a == b) continue;
      if (a != a0) trip.emplace_back(red(a), red(a), w[e]);
      if (b != a0) trip.emplace_back(red(b), red(b), w[e]);
      if (a != a0 && b != a0) {
        trip.emplace_back(red(a), red(b), -w[e]);
        trip.emplace_back(red(b), red(a), -w[e]);
      }
    }
    Eigen::SparseMatrix<double> L(mesh.vertex_count() - 1, mesh.vertex_count() - 1);
    L.setFromTriplets(trip.begin(), trip.end());
    src.u_base = Eigen::VectorXd::Zero(mesh.vertex_count());
    if (L.rows() > 0) {
      Eigen::VectorXd qr(L.rows());
      for (Vertex v = 0; v < mesh.vertex_count(); ++v)
        if (v != a0) qr[red(v)] = q[v];
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
      Eigen::VectorXd ur;
      if (ldlt.info() == Eigen::Success) ur = ldlt.solve(qr);
      if (ldlt.info() != Eigen::Success || (L * ur - qr).norm() > 1e-8 * std::max(1.0, qr.norm())) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(L);
        require(lu.info() == Eigen::Success, ErrorKind::SolverFailure,
                "second-kind source solve failed");
        ur = lu.solve(qr);
      }
      for (Vertex v = 0; v < mesh.vertex_count(); ++v)
        if (v != a0) src.u_base[v] = ur[red(v)];
    }
  }

  // choose the real B-periods so that the dual alpha-periods of c Du - sigma
  // vanish; sigma is the antisymmetric unit pole indicator
  auto dual_alpha_integral = [&](const MultiValuedField& f, int j) {
    double s = 0;
    for (OrientedEdge x : hd.dual_basis_loops[j])
      s += w[mesh.edge_of(x)] * edge_difference(hd, f, x);
    return s;
  };
  auto sigma_at = [&](OrientedEdge x) {
    if (mesh.edge_of(x) != pe) return 0.0;
    return pole_sign * mesh.orientation_sign(x);
  };
  Eigen::MatrixXd G(g, g);
  Eigen::VectorXd target(g);
  for (int j = 0; j < g; ++j) {
    double sj = 0;
    for (OrientedEdge x : hd.dual_basis_loops[j]) sj += sigma_at(x);
    target[j] = sj - dual_alpha_integral(src, j);
    for (int k = 0; k < g; ++k) G(j, k) = dual_alpha_integral(basis[k], j);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  require(lu.isInvertible(), ErrorKind::SolverFailure,
          "dual-period correction system is singular");
  const Eigen::VectorXd b_re = lu.solve(target);

  MultiValuedField f;
  f.u_base = src.u_base;
  for (int k = 0; k < g; ++k) f.u_base += b_re[k] * basis[k].u_base;
  f.p_re = Eigen::VectorXd::Zero(n);
  f.p_re.tail(g) = b_re;

  // integrate the imaginary part: Dv = c Du - sigma
  auto dv = [&](OrientedEdge x) {
    return w[mesh.edge_of(x)] * edge_difference(hd, f, x) - sigma_at(x);
  };
  f.p_im = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    for (OrientedEdge x : hd.dual_basis_loops[j]) f.p_im[j] += dv(x);
  require(f.p_im.head(g).cwiseAbs().maxCoeff() <= 1e-7, ErrorKind::SolverFailure,
          "imaginary A-periods failed to vanish");
  f.p_im.head(g).setZero();

  f.v_base = Eigen::VectorXd::Zero(mesh.face_count());
  std::vector<char> seen(mesh.face_count(), 0);
  std::vector<Face> order{anchor_face};
  seen[anchor_face] = 1;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    const Face fa = order[qi];
    for (int s = 0; s < 3; ++s) {
      const OrientedEdge x = mesh.opposite(3 * fa + s);
      const Face gface = mesh.left(x);
      if (seen[gface]) continue;
      seen[gface] = 1;
      f.v_base[gface] = f.v_base[fa] + dv(x) - hd.kappa_star_at(x).dot(f.p_im);
      order.push_back(gface);
    }
  }
  double scale = 1;
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    scale = std::max(scale, std::abs(w[e] * edge_difference(hd, f, mesh.canonical(e))));
  for (Edge e = 0; e < mesh.edge_count(); ++e) {
    const OrientedEdge ce = mesh.canonical(e);
    const double defect = dual_difference(hd, f, ce) - dv(ce);
    require(std::abs(defect) <= 1e-7 * scale, ErrorKind::SolverFailure,
            "second-kind conjugate integration inconsistent");
  }

  SecondKindIntegral out;
  out.pole = pole;
  out.B = b_re.cast<std::complex<double>>() +
          std::complex<double>(0, 1) * f.p_im.tail(g).cast<std::complex<double>>();
  out.field = std::move(f);
  return out;
}

EdgeDifferential solve_third_kind(const SurfaceMesh& mesh, const EdgeWeights& w,
                                  const HomologyData& hd, const PolePair& poles, double tol) {
  const int g = hd.genus, V = mesh.vertex_count(), F = mesh.face_count(), E = mesh.edge_count();
  require(poles.kind != CellKind::EdgeCell, ErrorKind::InvalidArgument,
          "third-kind poles live on vertices or faces");
  const bool on_vertices = poles.kind == CellKind::VertexCell;
  const int count = on_vertices ? V : F;
  require(poles.z >= 0 && poles.z < count && poles.w >= 0 && poles.w < count,
          ErrorKind::InvalidArgument, "pole cell out of range");
  require(poles.z != poles.w, ErrorKind::CoincidentPoles, "pole cells coincide");

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(E);
  int row = 0;
  // vertex residues: i * sum_{e into z} c omega = prescribed
  const int skip_vertex = on_vertices ? poles.w : 0;
  for (Vertex z = 0; z < V; ++z) {
    if (z == skip_vertex) continue;
    for (OrientedEdge out : mesh.outgoing(z)) {
      const OrientedEdge e = mesh.opposite(out);
      trip.emplace_back(row, mesh.edge_of(e),
                        w[mesh.edge_of(e)] * mesh.orientation_sign(e));
    }
    if (on_vertices && z == poles.z) rhs[row] = 1;
    ++row;
  }
  // face residues: counterclockwise boundary sums
  const int skip_face = on_vertices ? 0 : poles.w;
  for (Face f = 0; f < F; ++f) {
    if (f == skip_face) continue;
    for (int s = 0; s < 3; ++s) {
      const OrientedEdge e = 3 * f + s;
      trip.emplace_back(row, mesh.edge_of(e), mesh.orientation_sign(e));
    }
    if (!on_vertices && f == poles.z) rhs[row] = 1;
    ++row;
  }
  // vanishing real and imaginary A-periods
  for (int k = 0; k < g; ++k) {
    for (OrientedEdge e : hd.basis_cycles[k])
      trip.emplace_back(row, mesh.edge_of(e), mesh.orientation_sign(e));
    ++row;
  }
  for (int k = 0; k < g; ++k) {
    for (OrientedEdge x : hd.dual_basis_loops[k])
      trip.emplace_back(row, mesh.edge_of(x),
                        w[mesh.edge_of(x)] * mesh.orientation_sign(x));
    ++row;
  }
  require(row == E, ErrorKind::ConsistencyFailure, "third-kind system is not square");

  Eigen::SparseMatrix<double> M(E, E);
  M.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(M);
  require(lu.info() == Eigen::Success, ErrorKind::SolverFailure,
          "third-kind system factorization failed");
  Eigen::VectorXd x = lu.solve(rhs);
  require((M * x - rhs).norm() <= tol * std::max(1.0, rhs.norm()), ErrorKind::SolverFailure,
          "third-kind system residual too large");
  EdgeDifferential d;
  d.omega = std::move(x);
  return d;
}

Divisor divisor_of(const SurfaceMesh& mesh, const EdgeWeights& w, const MeromorphicFunction& f,
                   double threshold) {
  Divisor d = Divisor::zero(mesh);
  const double scale =
      std::max({f.re.cwiseAbs().maxCoeff(), f.im.cwiseAbs().maxCoeff(), 1e-300});
  const double cmax = std::max(1.0, w.c.cwiseAbs().maxCoeff());
  for (Vertex z = 0; z < mesh.vertex_count(); ++z)
    if (std::abs(f.re[z]) <= threshold * scale) d.vertex[z] = 1;
  for (Face x = 0; x < mesh.face_count(); ++x)
    if (std::abs(f.im[x]) <= threshold * scale) d.face[x] = 1;
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    if (std::abs(edge_residue(mesh, w, f, mesh.canonical(e))) > threshold * scale * cmax)
      d.edge[e] = -1;
  return d;
}

Divisor divisor_of(const SurfaceMesh& mesh, const EdgeWeights& w, const EdgeDifferential& omega,
                   double threshold) {
  Divisor d = Divisor::zero(mesh);
  const double scale = std::max(omega.omega.cwiseAbs().maxCoeff(), 1e-300);
  const double cmax = std::max(1.0, w.c.cwiseAbs().maxCoeff());
  const Residues r = residues(mesh, w, omega);
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    if (std::abs(omega.omega[e]) <= threshold * scale) d.edge[e] = 1;
  for (Vertex z = 0; z < mesh.vertex_count(); ++z)
    if (std::abs(r.vertex[z]) > threshold * scale * cmax) d.vertex[z] = -1;
  for (Face x = 0; x < mesh.face_count(); ++x)
    if (std::abs(r.face[x]) > threshold * scale) d.face[x] = -1;
  return d;
}

int validated_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  const double smax = s[0];
  if (smax <= 0) return 0;
  const double cutoff = 1e-8 * smax;
  int rank = 0;
  while (rank < s.size() && s[rank] > cutoff) ++rank;
  if (rank > 0 && rank < s.size()) {
    const double below = s[rank];
    require(below <= 0 || s[rank - 1] / below > 1e3, ErrorKind::RankAmbiguous,
            "singular value gap too small to determine a rank");
  }
  return rank;
}

RiemannRochResult riemann_roch(const SurfaceMesh& mesh, const EdgeWeights& w,
                               const HomologyData& hd, const Divisor& d, double tol) {
  require(d.admissible(), ErrorKind::NotAdmissible,
          "divisor must be <= 0 on vertices and faces and >= 0 on edges");
  const int g = hd.genus;

  std::vector<Edge> cols;
  for (Edge e = 0; e < mesh.edge_count(); ++e)
    if (d.edge[e] == 1) cols.push_back(e);
  std::vector<Vertex> vsupp;
  for (Vertex z = 0; z < mesh.vertex_count(); ++z)
    if (d.vertex[z] == -1) vsupp.push_back(z);
  std::vector<Face> fsupp;
  for (Face x = 0; x < mesh.face_count(); ++x)
    if (d.face[x] == -1) fsupp.push_back(x);

  const int nv = static_cast<int>(vsupp.size());
  const int nf = static_cast<int>(fsupp.size());
  const int ncols = static_cast<int>(cols.size());
  const int nrows = 2 * g + std::max(0, nv - 1) + std::max(0, nf - 1);

  Eigen::MatrixXd M(nrows, ncols);
  if (ncols > 0) {
    FirstKindSolver fks(mesh, w, hd, 0, 0, tol);
    for (int k = 0; k < g; ++k) {
      const auto phi = fks.solve(Eigen::VectorXcd::Unit(g, k));
      const auto phi_star =
          fks.solve(std::complex<double>(0, 1) * Eigen::VectorXcd::Unit(g, k));
      for (int j = 0; j < ncols; ++j) {
        const OrientedEdge ce = mesh.canonical(cols[j]);
        M(k, j) = edge_difference(hd, phi.field, ce);
        M(g + k, j) = edge_difference(hd, phi_star.field, ce);
      }
    }
    for (int i = 1; i < nv; ++i) {
      const auto dphi =
          solve_third_kind(mesh, w, hd, {CellKind::VertexCell, vsupp[0], vsupp[i]});
      for (int j = 0; j < ncols; ++j) M(2 * g + i - 1, j) = dphi.omega[cols[j]];
    }
    for (int i = 1; i < nf; ++i) {
      const auto dphi =
          solve_third_kind(mesh, w, hd, {CellKind::FaceCell, fsupp[0], fsupp[i]});
      for (int j = 0; j < ncols; ++j)
        M(2 * g + std::max(0, nv - 1) + i - 1, j) = dphi.omega[cols[j]];
    }
  }

  RiemannRochResult r;
  r.rows = nrows;
  r.cols = ncols;
  r.rank = ncols > 0 ? validated_rank(M) : 0;
  r.deg_d = d.degree();
  // the real and imaginary constants stay unconstrained when the respective
  // support is empty
  r.l_minus_d = ncols - r.rank + (nv == 0 ? 1 : 0) + (nf == 0 ? 1 : 0);
  r.i_d = nrows - r.rank;
  r.identity_holds = r.l_minus_d == r.deg_d - 2 * g + 2 + r.i_d;
  return r;
}

int direct_i_dimension(const SurfaceMesh& mesh, const EdgeWeights& w, const Divisor& d,
                       int max_edges) {
  require(d.admissible(), ErrorKind::NotAdmissible, "divisor must be admissible");
  const int E = mesh.edge_count();
  require(E <= max_edges, ErrorKind::TooLarge, "mesh too large for dense nullspace");

  std::vector<Eigen::RowVectorXd> rows;
  for (Edge e = 0; e < E; ++e)
    if (d.edge[e] == 1) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(E);
      r[e] = 1;
      rows.push_back(r);
    }
  for (Vertex z = 0; z < mesh.vertex_count(); ++z) {
    if (d.vertex[z] == -1) continue;
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(E);
    for (OrientedEdge out : mesh.outgoing(z)) {
      const OrientedEdge e = mesh.opposite(out);
      r[mesh.edge_of(e)] += w[mesh.edge_of(e)] * mesh.orientation_sign(e);
    }
    rows.push_back(r);
  }
  for (Face f = 0; f < mesh.face_count(); ++f) {
    if (d.face[f] == -1) continue;
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(E);
    for (int s = 0; s < 3; ++s) r[mesh.edge_of(3 * f + s)] += mesh.orientation_sign(3 * f + s);
    rows.push_back(r);
  }
  Eigen::MatrixXd M(rows.size(), E);
  for (size_t i = 0; i < rows.size(); ++i) M.row(static_cast<int>(i)) = rows[i];
  return E - validated_rank(M);
}

} // namespace drs
