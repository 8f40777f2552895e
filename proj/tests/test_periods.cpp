#include <doctest.h>

#include <complex>

#include "drs/generators.h"
#include "drs/periods.h"
#include "helpers.h"

using namespace drs;
using namespace drs::testing;

using cd = std::complex<double>;

TEST_CASE("energy matrix") {
  SUBCASE("unit square torus gives the identity") {
    const auto g = flat_torus({0, 1}, 1);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const Eigen::MatrixXd E = energy_matrix(g.mesh, cotan_weights(g.mesh), hd);
    CHECK((E - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-10);
  }
  SUBCASE("pyramid gives diag(2/sqrt3, 2/sqrt3)") {
    const auto g = pyramid();
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const Eigen::MatrixXd E = energy_matrix(g.mesh, cotan_weights(g.mesh), hd);
    const Eigen::MatrixXd expect =
        (2 / std::sqrt(3.0)) * Eigen::MatrixXd::Identity(2, 2);
    CHECK((E - expect).norm() < 1e-10);
  }
  SUBCASE("positive definite on random meshes") {
    Rng rng(61);
    for (int rep = 0; rep < 5; ++rep) {
      const auto g = jittered(genus2_squares(2), 0.2, rng);
      const HomologyData hd = homology_basis(g.mesh);
      const Eigen::MatrixXd E = energy_matrix(g.mesh, cotan_weights(g.mesh), hd);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E);
      CHECK(es.eigenvalues().minCoeff() > 0);
      CHECK((E - E.transpose()).norm() == 0.0);
    }
  }
}

TEST_CASE("period matrices from the energy matrix") {
  SUBCASE("identity energy gives pi = i") {
    const PeriodBundle pb = period_matrices_from_energy(Eigen::MatrixXd::Identity(2, 2));
    CHECK(std::abs(pb.pi_t(0, 0) - cd(0, 1)) < 1e-14);
    CHECK(std::abs(pb.pi_t_star(0, 0) - cd(0, 1)) < 1e-14);
    CHECK(std::abs(pb.pi_q(0, 0) - cd(0, 1)) < 1e-14);
  }
  SUBCASE("pyramid energy matrix decodes both period matrices") {
    Eigen::MatrixXd E = (2 / std::sqrt(3.0)) * Eigen::MatrixXd::Identity(2, 2);
    const PeriodBundle pb = period_matrices_from_energy(E);
    CHECK(std::abs(pb.pi_t(0, 0) - cd(0, 2 / std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(pb.pi_t_star(0, 0) - cd(0, std::sqrt(3.0) / 2)) < 1e-12);
    CHECK(std::abs(pb.pi_q(0, 0) - cd(0, (2 / std::sqrt(3.0) + std::sqrt(3.0) / 2) / 2)) <
          1e-12);
  }
  SUBCASE("singular block is rejected") {
    Eigen::MatrixXd E = Eigen::MatrixXd::Identity(2, 2);
    E(1, 1) = 0;
    CHECK_THROWS_AS((void)period_matrices_from_energy(E), Error);
  }
  SUBCASE("genus-2 surface approaches the reference matrix") {
    const auto g = genus2_squares(8);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const PeriodBundle pb = compute_period_bundle(g.mesh, cotan_weights(g.mesh), hd);
    Eigen::Matrix2cd pi_s;
    pi_s << cd(0, 5.0 / 3), cd(0, -4.0 / 3), cd(0, -4.0 / 3), cd(0, 5.0 / 3);
    CHECK((pb.pi_t - pi_s).norm() == doctest::Approx(0.611).epsilon(0.02));
  }
}

TEST_CASE("validate_period_bundle") {
  SUBCASE("valid bundles pass") {
    Rng rng(67);
    const auto g = jittered(genus2_squares(2), 0.15, rng);
    const HomologyData hd = homology_basis(g.mesh);
    const PeriodBundle pb = compute_period_bundle(g.mesh, cotan_weights(g.mesh), hd);
    CHECK(validate_period_bundle(pb).all_pass());
  }
  SUBCASE("broken symmetry is detected with a defect") {
    PeriodBundle pb = period_matrices_from_energy(Eigen::MatrixXd::Identity(4, 4));
    pb.pi_t(0, 1) += cd(0, 0.25); // break Im symmetry by hand
    pb.im_pi_t_asymmetry = (pb.pi_t.imag() - pb.pi_t.imag().transpose()).norm();
    const ValidationReport r = validate_period_bundle(pb);
    CHECK(!r.all_pass());
    bool found = false;
    for (const auto& c : r.checks)
      if (c.name == "Im pi_t symmetric") {
        found = true;
        CHECK(!c.pass);
        CHECK(c.defect > 0.2);
      }
    CHECK(found);
  }
  SUBCASE("pyramid: dual period matrix differs from the period matrix") {
    const auto g = pyramid();
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const PeriodBundle pb = compute_period_bundle(g.mesh, cotan_weights(g.mesh), hd);
    CHECK(validate_period_bundle(pb).all_pass());
    CHECK((pb.pi_t - pb.pi_t_star).norm() > 0.25);
  }
}

TEST_CASE("solve_first_kind") {
  SUBCASE("zero A-periods give a constant") {
    const auto g = genus2_squares(2);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const auto out =
        solve_first_kind(g.mesh, cotan_weights(g.mesh), hd, Eigen::VectorXcd::Zero(2));
    CHECK(out.field.u_base.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(out.field.v_base.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(out.B.cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("flat torus: B = A * eta") {
    for (cd eta : {cd(0, 1), cd(0.3, 0.8)}) {
      const auto g = flat_torus(eta, 2);
      const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
      Eigen::VectorXcd A(1);
      A << cd(1.5, -2.25);
      const auto out = solve_first_kind(g.mesh, cotan_weights(g.mesh), hd, A);
      CHECK(std::abs(out.B[0] - A[0] * eta) < 1e-9);
    }
  }
  SUBCASE("real-linearity in (Re A, Im A)") {
    Rng rng(71);
    const auto g = jittered(genus2_squares(2), 0.1, rng);
    const HomologyData hd = homology_basis(g.mesh);
    const EdgeWeights w = cotan_weights(g.mesh);
    const FirstKindSolver fks(g.mesh, w, hd);
    Eigen::VectorXcd A1(2), A2(2);
    for (int i = 0; i < 2; ++i) {
      A1[i] = cd(uniform(rng, -1, 1), uniform(rng, -1, 1));
      A2[i] = cd(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    const auto o1 = fks.solve(A1), o2 = fks.solve(A2), o12 = fks.solve(A1 + A2);
    CHECK((o1.B + o2.B - o12.B).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((o1.field.u_base + o2.field.u_base - o12.field.u_base).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("two-route agreement with the direct square system") {
  Rng rng(73);
  // the jittered genus-2 mesh has an asymmetric Re pi_t, which pins down the
  // off-diagonal block orientation of the energy-matrix extraction
  for (auto gen : {flat_torus({0.4, 0.9}, 2), genus2_squares(2)}) {
    for (int jit = 0; jit < 2; ++jit) {
      const auto g = jit ? jittered(gen, 0.15, rng) : gen;
      const HomologyData hd = jit ? homology_basis(g.mesh)
                                  : homology_basis(g.mesh, g.basis_loops);
      const EdgeWeights w = cotan_weights(g.mesh);
      const FirstKindSolver fks(g.mesh, w, hd);
      for (int k = 0; k < hd.genus; ++k) {
        const Eigen::VectorXcd A = Eigen::VectorXcd::Unit(hd.genus, k);
        const auto energy_route = fks.solve(A);
        const auto direct_route = solve_first_kind_direct(g.mesh, w, hd, A);
        CHECK((energy_route.B - direct_route.B).cwiseAbs().maxCoeff() < 1e-8);
      }
      // the direct route reproduces the whole period matrix column by column
      for (int k = 0; k < hd.genus; ++k) {
        const auto direct_route =
            solve_first_kind_direct(g.mesh, w, hd, Eigen::VectorXcd::Unit(hd.genus, k));
        for (int l = 0; l < hd.genus; ++l)
          CHECK(std::abs(direct_route.B[l] - fks.bundle().pi_t(l, k)) < 1e-8);
      }
    }
  }
  // on at least one of the jittered meshes Re pi_t must be genuinely
  // asymmetric, otherwise this test would not distinguish the block order
  const auto g = jittered(genus2_squares(2), 0.15, rng);
  const HomologyData hd = homology_basis(g.mesh);
  const PeriodBundle pb = compute_period_bundle(g.mesh, cotan_weights(g.mesh), hd);
  const Eigen::MatrixXd re = pb.pi_t.real();
  CHECK((re - re.transpose()).norm() > 1e-4);
}

TEST_CASE("Riemann bilinear identity") {
  Rng rng(79);
  SUBCASE("constant second factor") {
    const auto g = genus2_squares(2);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const MultiValuedField f = random_field(g.mesh, 2, rng);
    MultiValuedField c = random_field(g.mesh, 2, rng);
    c.v_base.setConstant(0.4);
    c.p_im.setZero();
    const BilinearReport r = riemann_bilinear_residual(hd, f, c);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("first-kind integral on the unit torus") {
    const auto g = flat_torus({0, 1}, 1);
    const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
    const EdgeWeights w = cotan_weights(g.mesh);
    Eigen::VectorXcd A(1);
    A << 1;
    const auto out = solve_first_kind(g.mesh, w, hd, A);
    const BilinearReport r = riemann_bilinear_residual(hd, out.field, out.field);
    CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-10)); // the energy
    CHECK(r.residual() < 1e-10);
    const BilinearReport ec = energy_conservation_residual(w, hd, out.field);
    CHECK(ec.lhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ec.residual() < 1e-10);
  }
  SUBCASE("arbitrary multi-valued pairs") {
    const auto g0 = genus2_squares(4);
    const auto g = jittered(g0, 0.1, rng);
    const HomologyData hd = homology_basis(g.mesh);
    for (int rep = 0; rep < 20; ++rep) {
      const MultiValuedField f = random_field(g.mesh, 2, rng);
      const MultiValuedField fp = random_field(g.mesh, 2, rng);
      const BilinearReport r = riemann_bilinear_residual(hd, f, fp);
      CHECK(r.residual() < 1e-9 * std::max({1.0, std::abs(r.lhs), std::abs(r.rhs)}));
    }
  }
  SUBCASE("antisymmetry lemma for pairs of first-kind integrals") {
    Rng rng2(83);
    const auto g = jittered(genus2_squares(2), 0.12, rng2);
    const HomologyData hd = homology_basis(g.mesh);
    const EdgeWeights w = cotan_weights(g.mesh);
    const FirstKindSolver fks(g.mesh, w, hd);
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXcd A1(2), A2(2);
      for (int i = 0; i < 2; ++i) {
        A1[i] = cd(uniform(rng2, -1, 1), uniform(rng2, -1, 1));
        A2[i] = cd(uniform(rng2, -1, 1), uniform(rng2, -1, 1));
      }
      const auto o1 = fks.solve(A1), o2 = fks.solve(A2);
      CHECK(std::abs(period_antisymmetry(hd, o1.field, o2.field)) < 1e-8);
    }
  }
}

TEST_CASE("positive definiteness of Im pi_t through energy conservation") {
  Rng rng(89);
  const auto g = jittered(genus2_squares(2), 0.1, rng);
  const HomologyData hd = homology_basis(g.mesh);
  const EdgeWeights w = cotan_weights(g.mesh);
  const FirstKindSolver fks(g.mesh, w, hd);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd a(2);
    a << uniform(rng, -1, 1), uniform(rng, -1, 1);
    if (a.norm() < 1e-3) continue;
    const auto out = fks.solve(a.cast<cd>());
    const double quad = a.dot(fks.bundle().pi_t.imag() * a);
    const double energy = dirichlet_energy(w, hd, out.field);
    CHECK(quad == doctest::Approx(energy).epsilon(1e-8));
    CHECK(quad > 0);
  }
}

TEST_CASE("basis covariance of the energy matrix") {
  const auto g = flat_torus({0.3, 0.8}, 2);
  const HomologyData hd1 = homology_basis(g.mesh, g.basis_loops);
  const Eigen::MatrixXd E1 = energy_matrix(g.mesh, cotan_weights(g.mesh), hd1);

  // beta' = beta + alpha keeps the intersection form symplectic
  std::vector<OrientedEdge> beta2 = g.basis_loops[1];
  beta2.insert(beta2.end(), g.basis_loops[0].begin(), g.basis_loops[0].end());
  const HomologyData hd2 = homology_basis(g.mesh, {g.basis_loops[0], beta2});
  const Eigen::MatrixXd E2 = energy_matrix(g.mesh, cotan_weights(g.mesh), hd2);

  Eigen::Matrix2d T; // new periods in terms of old: p' = T p
  T << 1, 0, 1, 1;
  const Eigen::MatrixXd expect = T.inverse().transpose() * E1 * T.inverse();
  CHECK((E2 - expect).norm() < 1e-9);
}
