#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spraylab/errors.hpp"
#include "spraylab/reductive.hpp"
#include "spraylab/rng.hpp"
#include "test_helpers.hpp"

using namespace spraylab;
using namespace spraylab::testing;

TEST_CASE("validate_decomposition passes with zero residuals on so3 splits") {
  {
    const auto cert = sphere_space()->validate_decomposition();
    CHECK(cert.subalgebra_residual == 0.0);
    CHECK(cert.reductive_residual == 0.0);
    CHECK(cert.pass);
  }
  {
    // h = span{e1}, m = span{e2, e3}: same relations relabeled
    Eigen::VectorXd base(3);
    base << 1, 0, 0;
    ReductiveSpace space(so3_algebra(), MatrixRep(so3_generators(), base),
                         std::vector<int>{0}, std::vector<int>{1, 2});
    CHECK(space.validate_decomposition().pass);
  }
  {
    // empty h passes trivially
    const auto cert = so3_group_space()->validate_decomposition();
    CHECK(cert.subalgebra_residual == 0.0);
    CHECK(cert.reductive_residual == 0.0);
    CHECK(cert.pass);
  }
}

TEST_CASE("malformed index sets are rejected") {
  const LieAlgebra so3 = so3_algebra();
  const MatrixRep rep(so3_generators(), Eigen::MatrixXd::Identity(3, 3));
  CHECK_THROWS_AS(ReductiveSpace(so3, rep, {0, 1}, {1, 2}), InvalidInputError);  // overlap
  CHECK_THROWS_AS(ReductiveSpace(so3, rep, {0}, {1}), InvalidInputError);        // incomplete
  CHECK_THROWS_AS(ReductiveSpace(so3, rep, {0}, {1, 5}), InvalidInputError);     // out of range
  CHECK_THROWS_AS(ReductiveSpace(so3, rep, {0, 1, 2}, {}), InvalidInputError);   // empty m
}

TEST_CASE("stabilizer residual vanishes for the sphere model") {
  CHECK(sphere_space()->stabilizer_residual() <= 1e-15);
}

TEST_CASE("projections: examples, idempotence, exact sum") {
  const auto space = sphere_space();
  const AlgebraVector e3 = AlgebraVector::Unit(3, 2);
  CHECK((space->project_h(e3) - e3).norm() == 0.0);
  CHECK(space->project_m(e3).norm() == 0.0);
  CHECK((space->project_m(avec3(1, 0, 1)) - avec3(1, 0, 0)).norm() == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraVector x = rng.box(3, -2.0, 2.0);
    CHECK((space->project_h(space->project_h(x)) - space->project_h(x)).norm() == 0.0);
    CHECK((space->project_h(x) + space->project_m(x) - x).norm() == 0.0);
  }
}

TEST_CASE("m/h coordinate embeddings round-trip") {
  const auto space = sphere_space();
  const MVector y = mvec2(0.3, -1.7);
  CHECK((space->full_to_m(space->m_to_full(y)) - y).norm() == 0.0);
  Eigen::VectorXd h(1);
  h << 2.5;
  CHECK((space->full_to_h(space->h_to_full(h)) - h).norm() == 0.0);
  CHECK(space->m_to_full(y)[2] == 0.0);
}

TEST_CASE("orbit tangent basis on the sphere: [e3, y] restricted to m") {
  const auto space = sphere_space();
  {
    const Eigen::MatrixXd basis = space->orbit_tangent_basis(mvec2(1, 0));
    REQUIRE(basis.cols() == 1);
    CHECK((basis.col(0) - mvec2(0, 1)).norm() == 0.0);
  }
  {
    const Eigen::MatrixXd basis = space->orbit_tangent_basis(mvec2(0, 2));
    CHECK((basis.col(0) - mvec2(-2, 0)).norm() == 0.0);
  }
  CHECK(so3_group_space()->orbit_tangent_basis(avec3(1, 0, 0)).cols() == 0);
  CHECK_THROWS_AS(space->orbit_tangent_basis(mvec2(0, 0)), InvalidInputError);
}

TEST_CASE("orbit tangent vectors have no h-component") {
  const auto space = sphere_space();
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const MVector y = rng.unit_sphere(2);
    const AlgebraVector b =
        space->algebra().bracket(AlgebraVector::Unit(3, 2), space->m_to_full(y));
    CHECK(space->project_h(b).norm() <= 1e-12);
  }
}

TEST_CASE("tangency residual: membership, orthogonal distance, zero vector") {
  const auto space = sphere_space();
  const MVector y = mvec2(1, 0);
  CHECK(space->tangency_residual(y, mvec2(0, 1)) <= 1e-15);     // in the span
  CHECK(space->tangency_residual(y, mvec2(1, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));                   // orthogonal to span{(0,1)}
  CHECK(space->tangency_residual(y, mvec2(0, 0)) == 0.0);
  CHECK_THROWS_AS(space->tangency_residual(mvec2(0, 0), y), InvalidInputError);
}

TEST_CASE("tangency residual with empty h is the plain norm") {
  const auto space = so3_group_space();
  const MVector w = avec3(0.3, -0.4, 0.5);
  CHECK(space->tangency_residual(avec3(1, 0, 0), w) == w.norm());
}

TEST_CASE("tangency residual is invariant under rescaling y") {
  const auto space = sphere_space();
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const MVector y = rng.unit_sphere(2);
    const MVector w = rng.box(2, -2.0, 2.0);
    const double r1 = space->tangency_residual(y, w);
    const double r2 = space->tangency_residual(3.7 * y, w);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
  }
}

TEST_CASE("tangency residual satisfies the triangle-style bound") {
  const auto space = sphere_space();
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const MVector y = rng.unit_sphere(2);
    const MVector w1 = rng.box(2, -2.0, 2.0);
    const MVector w2 = rng.box(2, -2.0, 2.0);
    CHECK(space->tangency_residual(y, w1 + w2) <=
          space->tangency_residual(y, w1) + space->tangency_residual(y, w2) + 1e-12);
  }
}

TEST_CASE("tangency residual is Ad(H)-equivariant") {
  const auto space = sphere_space();
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const MVector y = rng.unit_sphere(2);
    const MVector w = rng.box(2, -2.0, 2.0);
    Eigen::VectorXd t(1);
    t << rng.uniform(-M_PI, M_PI);
    const Eigen::MatrixXd ad_g = space->adjoint_h_on_m(t);
    CHECK(std::abs(space->tangency_residual(ad_g * y, ad_g * w) -
                   space->tangency_residual(y, w)) <= 1e-9);
  }
}

TEST_CASE("restrict_to_m extracts the m block") {
  const auto space = sphere_space();
  Eigen::MatrixXd a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const Eigen::MatrixXd block = space->restrict_to_m(a);
  CHECK(block(0, 0) == 1);
  CHECK(block(0, 1) == 2);
  CHECK(block(1, 0) == 4);
  CHECK(block(1, 1) == 5);
}

TEST_CASE("adjoint_h_on_m rotates the m plane of the sphere model") {
  const auto space = sphere_space();
  Eigen::VectorXd t(1);
  t << M_PI / 2;
  const Eigen::MatrixXd ad_g = space->adjoint_h_on_m(t);
  // ad(e3): e1 -> e2, so the quarter-turn sends (1, 0) to (0, 1)
  CHECK((ad_g * mvec2(1, 0) - mvec2(0, 1)).norm() <= 1e-14);
}
