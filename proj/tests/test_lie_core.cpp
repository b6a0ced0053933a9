#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spraylab/errors.hpp"
#include "spraylab/lie_core.hpp"
#include "spraylab/rng.hpp"
#include "test_helpers.hpp"

using namespace spraylab;
using namespace spraylab::testing;

TEST_CASE("so3 bracket reproduces the defining relations") {
  const LieAlgebra so3 = so3_algebra();
  const AlgebraVector e1 = AlgebraVector::Unit(3, 0);
  const AlgebraVector e2 = AlgebraVector::Unit(3, 1);
  const AlgebraVector e3 = AlgebraVector::Unit(3, 2);

  CHECK((so3.bracket(e1, e2) - e3).norm() == 0.0);
  CHECK((so3.bracket(e2, e3) - e1).norm() == 0.0);
  CHECK((so3.bracket(e3, e1) - e2).norm() == 0.0);

  // bilinear expansion: [e1+e2, e3] = e1 - e2
  CHECK((so3.bracket(avec3(1, 1, 0), e3) - avec3(1, -1, 0)).norm() == 0.0);
}

TEST_CASE("bracket is antisymmetric and bilinear on random inputs") {
  const LieAlgebra so3 = so3_algebra();
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraVector x = rng.box(3, -2.0, 2.0);
    const AlgebraVector y = rng.box(3, -2.0, 2.0);
    const AlgebraVector z = rng.box(3, -2.0, 2.0);
    const double a = rng.uniform(-3.0, 3.0);

    CHECK(so3.bracket(x, x).norm() == 0.0);
    CHECK((so3.bracket(x, y) + so3.bracket(y, x)).norm() <= 1e-15);
    CHECK((so3.bracket(x + z, y) - so3.bracket(x, y) - so3.bracket(z, y)).norm() <= 1e-13);
    CHECK((so3.bracket(a * x, y) - a * so3.bracket(x, y)).norm() <= 1e-13);
  }
}

TEST_CASE("algebra validation: residuals vanish for so3, violations are caught") {
  const AlgebraCheck check = so3_algebra().validate();
  CHECK(check.antisymmetry_residual == 0.0);
  CHECK(check.jacobi_residual == 0.0);
  CHECK(check.pass);

  // c[1][2][3] = c[2][1][3] = 1 breaks antisymmetry
  std::vector<double> bad(27, 0.0);
  bad[(0 * 3 + 1) * 3 + 2] = 1.0;
  bad[(1 * 3 + 0) * 3 + 2] = 1.0;
  const AlgebraCheck bad_check = LieAlgebra(3, bad).validate();
  CHECK(bad_check.antisymmetry_residual == 2.0);
  CHECK_FALSE(bad_check.pass);
}

TEST_CASE("ad matrices act by the bracket") {
  const LieAlgebra so3 = so3_algebra();
  const AlgebraVector e1 = AlgebraVector::Unit(3, 0);
  const AlgebraVector e3 = AlgebraVector::Unit(3, 2);

  const Eigen::MatrixXd ad3 = so3.ad(e3);
  CHECK((ad3 * e1 - AlgebraVector::Unit(3, 1)).norm() == 0.0);       // e1 -> e2
  CHECK((ad3 * AlgebraVector::Unit(3, 1) + e1).norm() == 0.0);       // e2 -> -e1
  CHECK((ad3 * e3).norm() == 0.0);

  CHECK(so3.ad(AlgebraVector::Zero(3)).norm() == 0.0);

  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraVector x = rng.box(3, -2.0, 2.0);
    const AlgebraVector z = rng.box(3, -2.0, 2.0);
    CHECK((so3.ad(x) * x).norm() <= 1e-15);
    CHECK((so3.ad(x) * z - so3.bracket(x, z)).norm() <= 1e-14);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const LieAlgebra so3 = so3_algebra();
  CHECK_THROWS_AS(so3.bracket(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)),
                  InvalidInputError);
  CHECK_THROWS_AS(so3.ad(Eigen::VectorXd::Zero(4)), InvalidInputError);
}

TEST_CASE("matrix_exp basics: identity, rotation by pi, inverse") {
  CHECK((matrix_exp(Eigen::MatrixXd::Zero(3, 3)) - Eigen::MatrixXd::Identity(3, 3)).norm() ==
        0.0);

  const auto gens = so3_generators();
  Eigen::Matrix3d rot_pi;
  rot_pi << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK((matrix_exp(M_PI * gens[2]) - rot_pi).cwiseAbs().maxCoeff() <= 1e-14);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd m(4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) m(r, c) = rng.uniform(-1.5, 1.5);
    }
    CHECK((matrix_exp(m) * matrix_exp(-m) - Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
}

TEST_CASE("matrix_exp matches a long Taylor series on contractive inputs") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd m(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m(r, c) = rng.uniform(-0.4, 0.4);
    }
    Eigen::MatrixXd series = Eigen::MatrixXd::Identity(3, 3);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(3, 3);
    for (int k = 1; k <= 30; ++k) {
      term = (term * m) / k;
      series += term;
    }
    CHECK((matrix_exp(m) - series).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("matrix_exp stays accurate up to norm 10 (closed-form rotation)") {
  const auto gens = so3_generators();
  for (double theta : {2.5, 7.0, 10.0}) {
    const Eigen::MatrixXd r = matrix_exp(theta * gens[2]);
    Eigen::Matrix3d expected;
    expected << std::cos(theta), -std::sin(theta), 0, std::sin(theta), std::cos(theta), 0, 0,
        0, 1;
    CHECK((r - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(matrix_exp(Eigen::MatrixXd::Constant(2, 2,
                                                       std::numeric_limits<double>::quiet_NaN())),
                  InvalidInputError);
}

TEST_CASE("adjoint_of_exp: identity at t = 0, rotation by pi, inverse") {
  const LieAlgebra so3 = so3_algebra();
  const AlgebraVector e1 = AlgebraVector::Unit(3, 0);
  const AlgebraVector e3 = AlgebraVector::Unit(3, 2);

  CHECK((so3.adjoint_of_exp(e3, 0.0) - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK((so3.adjoint_of_exp(e3, M_PI) * e1 + e1).norm() <= 1e-14);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraVector v = rng.box(3, -1.0, 1.0);
    const double t = rng.uniform(-2.0, 2.0);
    CHECK((so3.adjoint_of_exp(v, t) * so3.adjoint_of_exp(v, -t) -
           Eigen::MatrixXd::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}

TEST_CASE("adjoint preserves the bracket") {
  const LieAlgebra so3 = so3_algebra();
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraVector v = rng.box(3, -1.5, 1.5);
    const double t = rng.uniform(-2.0, 2.0);
    const Eigen::MatrixXd ad_g = so3.adjoint_of_exp(v, t);
    const AlgebraVector x = rng.box(3, -2.0, 2.0);
    const AlgebraVector y = rng.box(3, -2.0, 2.0);
    CHECK((ad_g * so3.bracket(x, y) - so3.bracket(ad_g * x, ad_g * y)).norm() <= 1e-9);
  }
}

TEST_CASE("adjoint agrees with representation conjugation re-expressed in the basis") {
  const LieAlgebra so3 = so3_algebra();
  const MatrixRep rep(so3_generators(), Eigen::MatrixXd::Identity(3, 3));
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraVector v = rng.box(3, -1.0, 1.0);
    const double t = rng.uniform(-2.0, 2.0);
    const Eigen::MatrixXd g = matrix_exp(t * rep.rho(v));
    const Eigen::MatrixXd g_inv = matrix_exp(-t * rep.rho(v));
    Eigen::MatrixXd ad_via_rep(3, 3);
    for (int i = 0; i < 3; ++i) {
      ad_via_rep.col(i) = rep.to_coords(g * rep.generators()[static_cast<std::size_t>(i)] * g_inv);
    }
    CHECK((ad_via_rep - so3.adjoint_of_exp(v, t)).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("representation residual vanishes for the so3 defining representation") {
  const MatrixRep rep(so3_generators(), Eigen::MatrixXd::Identity(3, 3));
  CHECK(rep.representation_residual(so3_algebra()) == 0.0);
}

TEST_CASE("to_coords inverts rho and rejects matrices outside the span") {
  const MatrixRep rep(so3_generators(), Eigen::MatrixXd::Identity(3, 3));
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraVector x = rng.box(3, -2.0, 2.0);
    CHECK((rep.to_coords(rep.rho(x)) - x).norm() <= 1e-13);
  }
  // the identity is symmetric, not in the span of the antisymmetric generators
  CHECK_THROWS_AS(rep.to_coords(Eigen::MatrixXd::Identity(3, 3)), InvalidInputError);
}
