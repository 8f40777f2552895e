#include <doctest.h>

#include <complex>

#include "drs/abelian.h"
#include "drs/generators.h"
#include "helpers.h"

using namespace drs;
using namespace drs::testing;
using cd = std::complex<double>;

namespace {

EdgeDifferential random_differential(const SurfaceMesh& m, Rng& rng) {
  EdgeDifferential d;
  d.omega.resize(m.edge_count());
  for (Edge e = 0; e < m.edge_count(); ++e) d.omega[e] = uniform(rng, -1, 1);
  return d;
}

Divisor random_admissible_divisor(const SurfaceMesh& m, Rng& rng, int max_edges = 4) {
  Divisor d = Divisor::zero(m);
  const int ne = 1 + static_cast<int>(uniform(rng, 0, 1) * max_edges) % max_edges;
  for (int i = 0; i < ne; ++i)
    d.edge[static_cast<Edge>(uniform(rng, 0, 1) * m.edge_count()) % m.edge_count()] = 1;
  for (Vertex z = 0; z < m.vertex_count(); ++z)
    if (uniform(rng, 0, 1) < 0.25) d.vertex[z] = -1;
  for (Face f = 0; f < m.face_count(); ++f)
    if (uniform(rng, 0, 1) < 0.2) d.face[f] = -1;
  return d;
}

} // namespace

TEST_CASE("edge residues") {
  Rng rng(97);
  const auto g = jittered(genus2_squares(2), 0.1, rng);
  const HomologyData hd = homology_basis(g.mesh);
  const EdgeWeights w = cotan_weights(g.mesh);

  SUBCASE("conjugate pairs have no residues") {
    Eigen::VectorXd p(4);
    for (int i = 0; i < 4; ++i) p[i] = uniform(rng, -1, 1);
    const MultiValuedField f =
        conjugate_function(g.mesh, w, hd, solve_harmonic(g.mesh, w, hd, p));
    for (OrientedEdge e = 0; e < g.mesh.oriented_edge_count(); ++e)
      CHECK(std::abs(edge_residue(w, hd, f, e)) < 1e-8);
  }
  SUBCASE("antisymmetry under orientation flip") {
    const MultiValuedField f = random_field(g.mesh, 2, rng);
    for (OrientedEdge e = 0; e < g.mesh.oriented_edge_count(); ++e)
      CHECK(edge_residue(w, hd, f, e) ==
            doctest::Approx(-edge_residue(w, hd, f, g.mesh.opposite(e))));
  }
}

TEST_CASE("solve_second_kind") {
  Rng rng(101);
  for (auto gen : {flat_torus({0.3, 0.8}, 3), genus2_squares(2)}) {
    const auto g = jittered(gen, 0.08, rng);
    const HomologyData hd = homology_basis(g.mesh);
    const EdgeWeights w = cotan_weights(g.mesh);

    const OrientedEdge pole =
        static_cast<OrientedEdge>(uniform(rng, 0, 1) * g.mesh.oriented_edge_count()) %
        g.mesh.oriented_edge_count();
    const SecondKindIntegral phi = solve_second_kind(g.mesh, w, hd, pole);

    SUBCASE("contract: unit residue at the pole, none elsewhere, zero A-periods") {
      CHECK(edge_residue(w, hd, phi.field, pole) == doctest::Approx(1.0).epsilon(1e-9));
      for (Edge e = 0; e < g.mesh.edge_count(); ++e) {
        if (e == g.mesh.edge_of(pole)) continue;
        CHECK(std::abs(edge_residue(w, hd, phi.field, g.mesh.canonical(e))) < 1e-9);
      }
      CHECK(phi.field.p_re.head(hd.genus).cwiseAbs().maxCoeff() == 0.0);
      CHECK(phi.field.p_im.head(hd.genus).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("B-periods match the first-kind formula") {
      // B_l = Re phi^l_star(t) - Re phi^l_star(h) + i (Re phi^l(t) - Re phi^l(h)),
      // with the differences transported along the pole edge itself
      const FirstKindSolver fks(g.mesh, w, hd);
      for (int l = 0; l < hd.genus; ++l) {
        const auto phi_l = fks.solve(Eigen::VectorXcd::Unit(hd.genus, l));
        const auto phi_l_star = fks.solve(cd(0, 1) * Eigen::VectorXcd::Unit(hd.genus, l));
        const cd expect = cd(-edge_difference(hd, phi_l_star.field, pole),
                             -edge_difference(hd, phi_l.field, pole));
        CHECK(std::abs(phi.B[l] - expect) < 1e-8);
      }
    }
    SUBCASE("opposite orientation negates the integral") {
      const SecondKindIntegral phi2 = solve_second_kind(g.mesh, w, hd, g.mesh.opposite(pole));
      CHECK((phi.B + phi2.B).cwiseAbs().maxCoeff() < 1e-8);
      // fields agree up to an additive constant after negation
      Eigen::VectorXd sum = phi.field.u_base + phi2.field.u_base;
      sum.array() -= sum[0];
      CHECK(sum.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("differentials and residues") {
  Rng rng(103);
  SUBCASE("differential of the unit-torus integral") {
    const auto g = flat_torus({0, 1}, 2);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const EdgeWeights w = cotan_weights(g.mesh);
    const auto out = solve_first_kind(g.mesh, w, hd, Eigen::VectorXcd::Ones(1));
    const EdgeDifferential om = differential_of(hd, out.field);
    // u = Re z: steps of 1/2 across horizontal and diagonal edges, 0 across
    // vertical ones
    auto axis = [&](Edge e) { // 0 horizontal, 1 vertical, 2 diagonal
      const OrientedEdge ce = g.mesh.canonical(e);
      const int s = ce % 3;
      if (g.mesh.left(ce) % 2 == 0) return s == 2 ? 0 : (s == 1 ? 1 : 2);
      return s == 0 ? 0 : (s == 2 ? 1 : 2);
    };
    for (Edge e = 0; e < g.mesh.edge_count(); ++e) {
      const double dx = std::abs(om.at(g.mesh, g.mesh.canonical(e)));
      const double expect = axis(e) == 1 ? 0.0 : 0.5;
      CHECK(dx == doctest::Approx(expect).epsilon(1e-9));
    }
    // first-kind characterization: all residues vanish
    const Residues r = residues(g.mesh, w, om);
    CHECK(r.vertex.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.face.cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("residue sums vanish for arbitrary differentials") {
    const auto g = jittered(genus2_squares(2), 0.1, rng);
    const EdgeWeights w = cotan_weights(g.mesh);
    const EdgeDifferential om = random_differential(g.mesh, rng);
    const Residues r = residues(g.mesh, w, om);
    CHECK(std::abs(r.vertex.sum()) < 1e-10);
    CHECK(std::abs(r.face.sum()) < 1e-10);
  }
  SUBCASE("face boundary integral equals the face residue") {
    const auto g = jittered(genus2_squares(2), 0.1, rng);
    const EdgeWeights w = cotan_weights(g.mesh);
    const EdgeDifferential om = random_differential(g.mesh, rng);
    const Residues r = residues(g.mesh, w, om);
    for (Face f = 0; f < g.mesh.face_count(); ++f) {
      const std::vector<OrientedEdge> boundary = {3 * f, 3 * f + 1, 3 * f + 2};
      CHECK(integrate(g.mesh, om, boundary) == doctest::Approx(r.face[f]));
    }
  }
  SUBCASE("reversed paths negate the integral; broken chains are rejected") {
    const auto g = genus2_squares(2);
    const EdgeWeights w = cotan_weights(g.mesh);
    const EdgeDifferential om = random_differential(g.mesh, rng);
    const std::vector<OrientedEdge> path = {0, g.mesh.next_in_face(0)};
    std::vector<OrientedEdge> back;
    for (auto it = path.rbegin(); it != path.rend(); ++it) back.push_back(g.mesh.opposite(*it));
    CHECK(integrate(g.mesh, om, path) == doctest::Approx(-integrate(g.mesh, om, back)));
    // a dual chain of one crossing is the two-triangle rule c(e) omega(e)
    const OrientedEdge e0 = g.mesh.canonical(0);
    CHECK(integrate_dual_chain(g.mesh, w, om, {e0}) ==
          doctest::Approx(w[g.mesh.edge_of(e0)] * om.at(g.mesh, e0)));
    // crossing into a face and out through a non-adjacent crossing breaks
    OrientedEdge other = -1;
    for (OrientedEdge x = 0; x < g.mesh.oriented_edge_count(); ++x)
      if (g.mesh.left(x) != g.mesh.right(e0) && g.mesh.right(x) != g.mesh.right(e0)) {
        other = x;
        break;
      }
    REQUIRE(other >= 0);
    CHECK_THROWS_AS((void)integrate_dual_chain(g.mesh, w, om, {e0, other}), Error);
  }
}

TEST_CASE("solve_third_kind") {
  Rng rng(107);
  const auto g = jittered(genus2_squares(4), 0.1, rng);
  const HomologyData hd = homology_basis(g.mesh);
  const EdgeWeights w = cotan_weights(g.mesh);

  SUBCASE("vertex poles carry residues +-i and nothing else") {
    const Vertex z = 1, v = 3;
    const EdgeDifferential om = solve_third_kind(g.mesh, w, hd, {CellKind::VertexCell, z, v});
    const Residues r = residues(g.mesh, w, om);
    CHECK(r.vertex[z] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.vertex[v] == doctest::Approx(-1.0).epsilon(1e-9));
    for (Vertex y = 0; y < g.mesh.vertex_count(); ++y)
      if (y != z && y != v) CHECK(std::abs(r.vertex[y]) < 1e-9);
    CHECK(r.face.cwiseAbs().maxCoeff() < 1e-9);
    for (int k = 0; k < hd.genus; ++k) {
      CHECK(std::abs(integrate(g.mesh, om, hd.basis_cycles[k])) < 1e-9);
      double im_period = 0;
      for (OrientedEdge x : hd.dual_basis_loops[k])
        im_period += w[g.mesh.edge_of(x)] * om.at(g.mesh, x);
      CHECK(std::abs(im_period) < 1e-9);
    }
  }
  SUBCASE("swapping the poles negates the differential") {
    const EdgeDifferential a = solve_third_kind(g.mesh, w, hd, {CellKind::VertexCell, 2, 5});
    const EdgeDifferential b = solve_third_kind(g.mesh, w, hd, {CellKind::VertexCell, 5, 2});
    CHECK((a.omega + b.omega).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("face poles") {
    const Face z = 0, v = 7;
    const EdgeDifferential om = solve_third_kind(g.mesh, w, hd, {CellKind::FaceCell, z, v});
    const Residues r = residues(g.mesh, w, om);
    CHECK(r.face[z] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.face[v] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(r.vertex.cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("coincident poles are rejected") {
    CHECK_THROWS_AS((void)solve_third_kind(g.mesh, w, hd, {CellKind::VertexCell, 2, 2}), Error);
  }
}

TEST_CASE("evaluation identity for meromorphic functions") {
  // Re f(z) - Re f(w) = sum_e dphi_{z,w}(e) res_e f, exercised on a
  // single-valued combination phi_{e1} - phi_{e2} of two parallel torus edges
  const auto g = flat_torus({0, 1}, 3);
  const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
  const EdgeWeights w = cotan_weights(g.mesh);
  // two horizontal edges in different rows: slots a->b of cells (0,0), (1,1)
  const OrientedEdge e1 = 3 * (2 * (0 * 3 + 0)) + 2;
  const OrientedEdge e2 = 3 * (2 * (1 * 3 + 1)) + 2;
  const SecondKindIntegral p1 = solve_second_kind(g.mesh, w, hd, e1);
  const SecondKindIntegral p2 = solve_second_kind(g.mesh, w, hd, e2);
  CHECK((p1.B - p2.B).cwiseAbs().maxCoeff() < 1e-9); // parallel edges
  MeromorphicFunction f;
  f.re = p1.field.u_base - p2.field.u_base;
  f.im = p1.field.v_base - p2.field.v_base;
  // residues of f: +1 at e1, -1 at e2
  CHECK(edge_residue(g.mesh, w, f, e1) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(edge_residue(g.mesh, w, f, e2) == doctest::Approx(-1.0).epsilon(1e-8));
  for (Vertex z = 1; z < g.mesh.vertex_count(); ++z) {
    const EdgeDifferential dphi = solve_third_kind(g.mesh, w, hd, {CellKind::VertexCell, z, 0});
    const double rhs = dphi.at(g.mesh, e1) * 1.0 + dphi.at(g.mesh, e2) * (-1.0);
    CHECK(f.re[z] - f.re[0] == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("divisors") {
  Rng rng(109);
  // several vertices, so generic residues make every vertex a pole
  const auto g = jittered(genus2_squares(4), 0.1, rng);
  const EdgeWeights w = cotan_weights(g.mesh);

  SUBCASE("admissibility") {
    Divisor d = Divisor::zero(g.mesh);
    CHECK(d.admissible());
    CHECK(d.degree() == 0);
    d.edge[0] = 1;
    d.vertex[0] = -1;
    CHECK(d.admissible());
    CHECK(d.degree() == 0);
    d.vertex[1] = 1;
    CHECK(!d.admissible());
  }
  SUBCASE("nonzero constants have empty divisors") {
    MeromorphicFunction f;
    f.re = Eigen::VectorXd::Constant(g.mesh.vertex_count(), 0.8);
    f.im = Eigen::VectorXd::Constant(g.mesh.face_count(), -1.2);
    const Divisor d = divisor_of(g.mesh, w, f);
    CHECK(d.vertex.cwiseAbs().sum() == 0);
    CHECK(d.edge.cwiseAbs().sum() == 0);
    CHECK(d.face.cwiseAbs().sum() == 0);
  }
  SUBCASE("a differential vanishing on one edge only") {
    EdgeDifferential om = random_differential(g.mesh, rng);
    om.omega[5] = 0;
    const Divisor d = divisor_of(g.mesh, w, om);
    CHECK(d.edge[5] == 1);
    for (Edge e = 0; e < g.mesh.edge_count(); ++e)
      if (e != 5) CHECK(d.edge[e] == 0);
    // generic residues: all vertices and faces are simple poles
    CHECK(d.vertex.sum() == -g.mesh.vertex_count());
    CHECK(d.face.sum() == -g.mesh.face_count());
  }
}

TEST_CASE("Riemann-Roch") {
  SUBCASE("zero divisor counts constants and first-kind differentials") {
    for (auto gen : {flat_torus({0, 1}, 2), genus2_squares(2)}) {
      const HomologyData hd = homology_basis(gen.mesh, gen.basis_loops);
      const EdgeWeights w = cotan_weights(gen.mesh);
      const RiemannRochResult r = riemann_roch(gen.mesh, w, hd, Divisor::zero(gen.mesh));
      CHECK(r.l_minus_d == 2);
      CHECK(r.i_d == 2 * hd.genus);
      CHECK(r.identity_holds);
      CHECK(direct_i_dimension(gen.mesh, w, Divisor::zero(gen.mesh)) == 2 * hd.genus);
    }
  }
  SUBCASE("torus: one simple pole admits only constants") {
    const auto g = flat_torus({0, 1}, 3);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const EdgeWeights w = cotan_weights(g.mesh);
    for (Edge e : {0, 5, 11}) {
      Divisor d = Divisor::zero(g.mesh);
      d.edge[e] = 1;
      const RiemannRochResult r = riemann_roch(g.mesh, w, hd, d);
      CHECK(r.l_minus_d == 2);
      CHECK(r.identity_holds);
    }
  }
  SUBCASE("torus: two simple poles need parallel edges") {
    const auto g = flat_torus({0, 1}, 3);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const EdgeWeights w = cotan_weights(g.mesh);
    auto classify = [&](Edge e) { // 0 horizontal, 1 vertical, 2 diagonal
      const OrientedEdge ce = g.mesh.canonical(e);
      const int s = ce % 3;
      if (g.mesh.left(ce) % 2 == 0) return s == 2 ? 0 : (s == 1 ? 1 : 2);
      return s == 0 ? 0 : (s == 2 ? 1 : 2);
    };
    int parallel_checked = 0, crossed_checked = 0;
    Rng rng(113);
    for (int rep = 0; rep < 30; ++rep) {
      const Edge e1 = static_cast<Edge>(uniform(rng, 0, 1) * g.mesh.edge_count()) %
                      g.mesh.edge_count();
      const Edge e2 = static_cast<Edge>(uniform(rng, 0, 1) * g.mesh.edge_count()) %
                      g.mesh.edge_count();
      if (e1 == e2) continue;
      Divisor d = Divisor::zero(g.mesh);
      d.edge[e1] = d.edge[e2] = 1;
      const RiemannRochResult r = riemann_roch(g.mesh, w, hd, d);
      CHECK(r.identity_holds);
      if (classify(e1) == classify(e2)) {
        CHECK(r.l_minus_d >= 3);
        ++parallel_checked;
      } else {
        CHECK(r.l_minus_d == 2);
        ++crossed_checked;
      }
    }
    CHECK(parallel_checked > 0);
    CHECK(crossed_checked > 0);
  }
  SUBCASE("dimension oracle refuses oversized meshes") {
    const auto g = genus2_squares(4);
    const EdgeWeights w = cotan_weights(g.mesh);
    try {
      (void)direct_i_dimension(g.mesh, w, Divisor::zero(g.mesh), 10);
      FAIL("expected TooLarge");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TooLarge);
    }
  }
  SUBCASE("identity and the dimension oracle on random admissible divisors") {
    Rng rng(127);
    for (auto gen : {flat_torus({0.3, 0.8}, 3), genus2_squares(2)}) {
      const auto g = jittered(gen, 0.05, rng);
      const HomologyData hd = homology_basis(g.mesh);
      const EdgeWeights w = cotan_weights(g.mesh);
      for (int rep = 0; rep < 10; ++rep) {
        const Divisor d = random_admissible_divisor(g.mesh, rng);
        const RiemannRochResult r = riemann_roch(g.mesh, w, hd, d);
        CHECK(r.identity_holds);
        CHECK(r.i_d == direct_i_dimension(g.mesh, w, d));
      }
    }
  }
  SUBCASE("inadmissible divisors are rejected") {
    const auto g = flat_torus({0, 1}, 2);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const EdgeWeights w = cotan_weights(g.mesh);
    Divisor d = Divisor::zero(g.mesh);
    d.vertex[0] = 1;
    CHECK_THROWS_AS((void)riemann_roch(g.mesh, w, hd, d), Error);
  }
}

TEST_CASE("validated rank raises on ambiguous spectra") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = 2e-8;
  m(2, 2) = 5e-9;
  CHECK_THROWS_AS((void)validated_rank(m), Error);
  m(1, 1) = 1;
  m(2, 2) = 1e-13;
  CHECK(validated_rank(m) == 2);
}
