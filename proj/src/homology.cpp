#include "drs/homology.h"

#include <algorithm>
#include <cmath>
#include <deque>

namespace drs {

void check_primal_loop(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& loop) {
  require(!loop.empty(), ErrorKind::NotClosed, "empty loop");
  const int m = static_cast<int>(loop.size());
  for (int i = 0; i < m; ++i) {
    require(loop[i] >= 0 && loop[i] < mesh.oriented_edge_count(), ErrorKind::InvalidArgument,
            "oriented edge out of range");
    require(mesh.head(loop[i]) == mesh.tail(loop[(i + 1) % m]), ErrorKind::NotClosed,
            "loop breaks between steps " + std::to_string(i) + " and " + std::to_string(i + 1));
  }
}

void check_dual_loop(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& loop) {
  require(!loop.empty(), ErrorKind::NotClosed, "empty dual loop");
  const int m = static_cast<int>(loop.size());
  for (int i = 0; i < m; ++i) {
    require(loop[i] >= 0 && loop[i] < mesh.oriented_edge_count(), ErrorKind::InvalidArgument,
            "oriented edge out of range");
    require(mesh.left(loop[i]) == mesh.right(loop[(i + 1) % m]), ErrorKind::NotClosed,
            "dual loop breaks at crossing " + std::to_string(i));
  }
}

namespace {

struct Passage {
  int in_pos;  // out-index of the reversed incoming edge
  int out_pos; // out-index of the outgoing edge
};

void collect_passages(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& loop,
                      std::vector<std::vector<Passage>>& at_vertex) {
  const int m = static_cast<int>(loop.size());
  for (int i = 0; i < m; ++i) {
    const OrientedEdge e_in = loop[i];
    const OrientedEdge e_out = loop[(i + 1) % m];
    const Vertex z = mesh.head(e_in);
    at_vertex[z].push_back(
        {mesh.out_index(mesh.opposite(e_in)), mesh.out_index(e_out)});
  }
}

// +1/2 on the ccw arc (q, p), -1/2 on (p, q), 0 on the endpoints
double side_of(const Passage& a, int x, int deg) {
  if (x == a.in_pos || x == a.out_pos) return 0.0;
  if (a.in_pos == a.out_pos) return 0.0; // spike, removable
  const int diff = (a.in_pos - a.out_pos + deg) % deg;
  const int dx = (x - a.out_pos + deg) % deg;
  return (dx > 0 && dx < diff) ? 0.5 : -0.5;
}

} // namespace

int loops_intersection(const SurfaceMesh& mesh, const std::vector<OrientedEdge>& a,
                       const std::vector<OrientedEdge>& b) {
  check_primal_loop(mesh, a);
  check_primal_loop(mesh, b);
  std::vector<std::vector<Passage>> pa(mesh.vertex_count()), pb(mesh.vertex_count());
  collect_passages(mesh, a, pa);
  collect_passages(mesh, b, pb);
  double total = 0;
  for (Vertex z = 0; z < mesh.vertex_count(); ++z) {
    if (pa[z].empty() || pb[z].empty()) continue;
    const int deg = mesh.degree(z);
    for (const Passage& A : pa[z])
      for (const Passage& B : pb[z])
        total += side_of(A, B.out_pos, deg) - side_of(A, B.in_pos, deg);
  }
  const double r = std::round(total);
  require(std::abs(total - r) < 1e-9, ErrorKind::ConsistencyFailure,
          "non-integer intersection number");
  return static_cast<int>(r);
}

std::vector<OrientedEdge> left_shift_to_dual_loop(const SurfaceMesh& mesh,
                                                  const std::vector<OrientedEdge>& loop) {
  check_primal_loop(mesh, loop);
  std::vector<OrientedEdge> dual;
  const int m = static_cast<int>(loop.size());
  for (int i = 0; i < m; ++i) {
    const OrientedEdge e_in = loop[i];
    const OrientedEdge e_out = loop[(i + 1) % m];
    // fan clockwise around head(e_in) from the face left of e_in to the face
    // left of e_out; crossing the spoke o from l_o to r_o is the positive
    // crossing of opposite(o)
    OrientedEdge o = mesh.out_cw_next(mesh.opposite(e_in));
    int guard = mesh.degree(mesh.head(e_in)) + 1;
    while (o != e_out) {
      dual.push_back(mesh.opposite(o));
      o = mesh.out_cw_next(o);
      require(--guard >= 0, ErrorKind::ConsistencyFailure, "fan walk did not terminate");
    }
  }
  if (!dual.empty()) check_dual_loop(mesh, dual);
  return dual;
}

namespace {

Eigen::VectorXi round_to_int(const Eigen::VectorXd& v) {
  Eigen::VectorXi r(v.size());
  for (int i = 0; i < v.size(); ++i) {
    const double x = std::round(v[i]);
    require(std::abs(v[i] - x) < 1e-6, ErrorKind::ConsistencyFailure,
            "loop class is not integral");
    r[i] = static_cast<int>(x);
  }
  return r;
}

// Congruence reduction of an antisymmetric integer matrix to the interleaved
// symplectic form diag([[0,1],[-1,0]], ...). Returns U with U * A * U^T in
// that form. Works for unimodular forms (surface intersection matrices).
Eigen::MatrixXi symplectic_reduce(Eigen::MatrixXi A) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXi U = Eigen::MatrixXi::Identity(n, n);
  auto row_op = [&](int i, int j, long long c) { // basis_i += c * basis_j
    if (c == 0) return;
    A.row(i) += static_cast<int>(c) * A.row(j);
    A.col(i) += static_cast<int>(c) * A.col(j);
    U.row(i) += static_cast<int>(c) * U.row(j);
  };
  auto swap_op = [&](int i, int j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    A.col(i).swap(A.col(j));
    U.row(i).swap(U.row(j));
  };
  auto round_div = [](long long a, long long b) {
    const double q = static_cast<double>(a) / static_cast<double>(b);
    return static_cast<long long>(std::llround(q));
  };

  for (int p = 0; p + 1 < n; p += 2) {
    for (int pass = 0;; ++pass) {
      require(pass < 256, ErrorKind::ConsistencyFailure, "symplectic reduction stalled");
      // minimal nonzero entry of the trailing block into position (p, p+1)
      int bi = -1, bj = -1;
      for (int i = p; i < n; ++i)
        for (int j = p; j < n; ++j)
          if (A(i, j) != 0 && (bi < 0 || std::abs(A(i, j)) < std::abs(A(bi, bj)))) {
            bi = i;
            bj = j;
          }
      require(bi >= 0, ErrorKind::ConsistencyFailure, "degenerate intersection form");
      swap_op(bi, p);
      if (bj == p) bj = bi; // swapped away
      swap_op(bj, p + 1);
      const long long v = A(p, p + 1);

      bool clean = true;
      for (int i = p + 2; i < n; ++i) {
        row_op(i, p, -round_div(A(i, p + 1), v));
        if (A(i, p + 1) != 0) clean = false;
        row_op(i, p + 1, -round_div(A(i, p), -v));
        if (A(i, p) != 0) clean = false;
      }
      if (!clean) continue;
      require(std::abs(v) == 1, ErrorKind::ConsistencyFailure,
              "intersection form is not unimodular");
      if (v == -1) swap_op(p, p + 1);
      break;
    }
  }
  return U;
}

std::vector<OrientedEdge> reversed_loop(const SurfaceMesh& mesh,
                                        const std::vector<OrientedEdge>& loop) {
  std::vector<OrientedEdge> r;
  r.reserve(loop.size());
  for (auto it = loop.rbegin(); it != loop.rend(); ++it) r.push_back(mesh.opposite(*it));
  return r;
}

struct Trees {
  // primal spanning tree: parent_edge[v] has head v and tail parent(v)
  std::vector<OrientedEdge> vertex_parent;
  std::vector<Vertex> vertex_order; // BFS order from root 0
  // dual spanning tree on non-tree edges: parent crossing of f has left f
  std::vector<OrientedEdge> face_parent;
  std::vector<Face> face_order; // BFS order from root face 0
  std::vector<char> edge_in_tree, edge_in_dual_tree;
  std::vector<Edge> leftover; // the 2g remaining edges
};

Trees build_trees(const SurfaceMesh& mesh) {
  Trees t;
  const int V = mesh.vertex_count(), F = mesh.face_count(), E = mesh.edge_count();
  t.vertex_parent.assign(V, -1);
  t.edge_in_tree.assign(E, 0);
  std::vector<char> vseen(V, 0);
  vseen[0] = 1;
  t.vertex_order.push_back(0);
  for (size_t qi = 0; qi < t.vertex_order.size(); ++qi) {
    const Vertex v = t.vertex_order[qi];
    for (OrientedEdge e : mesh.outgoing(v)) {
      const Vertex h = mesh.head(e);
      if (!vseen[h]) {
        vseen[h] = 1;
        t.vertex_parent[h] = e;
        t.edge_in_tree[mesh.edge_of(e)] = 1;
        t.vertex_order.push_back(h);
      }
    }
  }

  t.face_parent.assign(F, -1);
  t.edge_in_dual_tree.assign(E, 0);
  std::vector<char> fseen(F, 0);
  fseen[0] = 1;
  t.face_order.push_back(0);
  for (size_t qi = 0; qi < t.face_order.size(); ++qi) {
    const Face f = t.face_order[qi];
    for (int s = 0; s < 3; ++s) {
      const OrientedEdge e = 3 * f + s;
      if (t.edge_in_tree[mesh.edge_of(e)]) continue;
      const Face g = mesh.right(e);
      if (!fseen[g]) {
        fseen[g] = 1;
        t.face_parent[g] = mesh.opposite(e); // left shore g
        t.edge_in_dual_tree[mesh.edge_of(e)] = 1;
        t.face_order.push_back(g);
      }
    }
  }

  for (Edge e = 0; e < E; ++e)
    if (!t.edge_in_tree[e] && !t.edge_in_dual_tree[e]) t.leftover.push_back(e);
  require(static_cast<int>(t.leftover.size()) == 2 * mesh.genus(), ErrorKind::ConsistencyFailure,
          "tree-cotree leftover count mismatch");
  return t;
}

std::vector<OrientedEdge> tree_path_from_root(const SurfaceMesh& mesh, const Trees& t, Vertex v) {
  std::vector<OrientedEdge> path;
  while (t.vertex_parent[v] >= 0) {
    path.push_back(t.vertex_parent[v]);
    v = mesh.tail(t.vertex_parent[v]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// primal cocycle columns: zero on tree edges, unit on one leftover edge,
// propagated through face closedness over the dual tree
Eigen::MatrixXd kappa_columns(const SurfaceMesh& mesh, const Trees& t) {
  const int E = mesh.edge_count();
  const int L = static_cast<int>(t.leftover.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(E, L);
  for (int m = 0; m < L; ++m) C(t.leftover[m], m) = 1.0;
  for (auto it = t.face_order.rbegin(); it != t.face_order.rend(); ++it) {
    const Face f = *it;
    const OrientedEdge pe = t.face_parent[f];
    if (pe < 0) continue; // root face
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(L);
    for (int s = 0; s < 3; ++s) {
      const OrientedEdge e = 3 * f + s;
      if (mesh.edge_of(e) == mesh.edge_of(pe)) continue;
      acc += mesh.orientation_sign(e) * C.row(mesh.edge_of(e));
    }
    C.row(mesh.edge_of(pe)) = -mesh.orientation_sign(pe) * acc;
  }
  return C;
}

// dual cocycle columns: zero on dual-tree edges, unit on one leftover edge,
// propagated through vertex closedness over the primal tree
Eigen::MatrixXd kappa_star_columns(const SurfaceMesh& mesh, const Trees& t) {
  const int E = mesh.edge_count();
  const int L = static_cast<int>(t.leftover.size());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(E, L);
  for (int m = 0; m < L; ++m) C(t.leftover[m], m) = 1.0;
  for (auto it = t.vertex_order.rbegin(); it != t.vertex_order.rend(); ++it) {
    const Vertex v = *it;
    const OrientedEdge pe = t.vertex_parent[v];
    if (pe < 0) continue; // root vertex
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(L);
    for (OrientedEdge out : mesh.outgoing(v)) {
      const OrientedEdge e = mesh.opposite(out); // incoming, head v
      if (mesh.edge_of(e) == mesh.edge_of(pe)) continue;
      acc += mesh.orientation_sign(e) * C.row(mesh.edge_of(e));
    }
    C.row(mesh.edge_of(pe)) = -mesh.orientation_sign(pe) * acc;
  }
  return C;
}

Eigen::MatrixXd normalize_columns(const Eigen::MatrixXd& C,
                                  const Eigen::MatrixXd& pairings) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(pairings);
  require(lu.isInvertible(), ErrorKind::ConsistencyFailure,
          "cocycle normalization system is singular");
  return C * lu.inverse();
}

} // namespace

Eigen::VectorXi loop_class(const HomologyData& hd, const std::vector<OrientedEdge>& loop) {
  check_primal_loop(*hd.mesh, loop);
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(2 * hd.genus);
  for (OrientedEdge e : loop) sum += hd.kappa_at(e);
  return round_to_int(sum.transpose());
}

Eigen::VectorXi dual_loop_class(const HomologyData& hd, const std::vector<OrientedEdge>& loop) {
  check_dual_loop(*hd.mesh, loop);
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(2 * hd.genus);
  for (OrientedEdge e : loop) sum += hd.kappa_star_at(e);
  return round_to_int(sum.transpose());
}

static HomologyData finish_homology(const SurfaceMesh& mesh,
                                    std::vector<std::vector<OrientedEdge>> cycles) {
  const int g = mesh.genus();
  const int n = 2 * g;
  HomologyData hd;
  hd.mesh = &mesh;
  hd.genus = g;
  hd.basis_cycles = std::move(cycles);

  hd.intersection.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      hd.intersection(i, j) =
          i == j ? 0 : loops_intersection(mesh, hd.basis_cycles[i], hd.basis_cycles[j]);
  Eigen::MatrixXi J = Eigen::MatrixXi::Zero(n, n);
  for (int k = 0; k < g; ++k) {
    J(k, g + k) = 1;
    J(g + k, k) = -1;
  }
  require(hd.intersection == J, ErrorKind::ConsistencyFailure,
          "basis cycles are not symplectically normalized");

  const Trees t = build_trees(mesh);

  {
    const Eigen::MatrixXd C = kappa_columns(mesh, t);
    Eigen::MatrixXd M(n, n);
    for (int j = 0; j < n; ++j) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(n);
      for (OrientedEdge e : hd.basis_cycles[j])
        acc += mesh.orientation_sign(e) * C.row(mesh.edge_of(e));
      M.row(j) = acc;
    }
    hd.kappa = normalize_columns(C, M);
  }

  hd.dual_basis_loops.reserve(n);
  for (int j = 0; j < n; ++j)
    hd.dual_basis_loops.push_back(left_shift_to_dual_loop(mesh, hd.basis_cycles[j]));

  {
    const Eigen::MatrixXd C = kappa_star_columns(mesh, t);
    Eigen::MatrixXd M(n, n);
    for (int j = 0; j < n; ++j) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(n);
      for (OrientedEdge e : hd.dual_basis_loops[j])
        acc += mesh.orientation_sign(e) * C.row(mesh.edge_of(e));
      M.row(j) = acc;
    }
    hd.kappa_star = normalize_columns(C, M);
  }

  // closedness and normalization residuals
  double defect = 0;
  for (Face f = 0; f < mesh.face_count(); ++f) {
    Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(n);
    for (int k = 0; k < 3; ++k) s += hd.kappa_at(3 * f + k);
    defect = std::max(defect, s.cwiseAbs().maxCoeff());
  }
  for (Vertex v = 0; v < mesh.vertex_count(); ++v) {
    Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(n);
    for (OrientedEdge out : mesh.outgoing(v)) s += hd.kappa_star_at(mesh.opposite(out));
    defect = std::max(defect, s.cwiseAbs().maxCoeff());
  }
  require(defect < 1e-8, ErrorKind::ConsistencyFailure, "cocycle closedness residual too large");
  return hd;
}

HomologyData homology_basis(const SurfaceMesh& mesh) {
  const int g = mesh.genus();
  require(g >= 1, ErrorKind::GenusZero, "genus-0 surface has no period machinery");
  const Trees t = build_trees(mesh);

  // fundamental loops through the root vertex, one per leftover edge
  std::vector<std::vector<OrientedEdge>> raw;
  for (Edge le : t.leftover) {
    const OrientedEdge e = mesh.canonical(le);
    std::vector<OrientedEdge> loop = tree_path_from_root(mesh, t, mesh.tail(e));
    loop.push_back(e);
    const auto back = reversed_loop(mesh, tree_path_from_root(mesh, t, mesh.head(e)));
    loop.insert(loop.end(), back.begin(), back.end());
    raw.push_back(std::move(loop));
  }

  const int n = 2 * g;
  Eigen::MatrixXi omega(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      omega(i, j) = i == j ? 0 : loops_intersection(mesh, raw[i], raw[j]);

  const Eigen::MatrixXi U = symplectic_reduce(omega);

  // interleaved pairs (a_1, b_1, a_2, b_2, ...) -> (a_1..a_g, b_1..b_g)
  std::vector<std::vector<OrientedEdge>> cycles(n);
  for (int i = 0; i < n; ++i) {
    const int slot = (i % 2 == 0) ? i / 2 : g + i / 2;
    std::vector<OrientedEdge>& loop = cycles[slot];
    for (int j = 0; j < n; ++j) {
      const int c = U(i, j);
      const auto& part = c > 0 ? raw[j] : reversed_loop(mesh, raw[j]);
      for (int rep = 0; rep < std::abs(c); ++rep)
        loop.insert(loop.end(), part.begin(), part.end());
    }
  }
  return finish_homology(mesh, std::move(cycles));
}

HomologyData homology_basis(const SurfaceMesh& mesh,
                            const std::vector<std::vector<OrientedEdge>>& loops) {
  const int g = mesh.genus();
  require(g >= 1, ErrorKind::GenusZero, "genus-0 surface has no period machinery");
  require(static_cast<int>(loops.size()) == 2 * g, ErrorKind::InvalidArgument,
          "expected 2g basis loops");
  return finish_homology(mesh, loops);
}

} // namespace drs
