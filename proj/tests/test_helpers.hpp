#pragma once

#include <memory>
#include <vector>

#include "spraylab/lie_core.hpp"
#include "spraylab/reductive.hpp"
#include "spraylab/spray_field.hpp"

namespace spraylab::testing {

/// Dense structure-constant tensor with antisymmetric completion.
class TensorBuilder {
public:
  explicit TensorBuilder(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  /// 1-based indices, sets c[i][j][k] = v and c[j][i][k] = -v.
  TensorBuilder& set(int i, int j, int k, double v) {
    at(i - 1, j - 1, k - 1) = v;
    at(j - 1, i - 1, k - 1) = -v;
    return *this;
  }

  const std::vector<double>& data() const { return data_; }

private:
  double& at(int i, int j, int k) {
    return data_[(static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)) * n_ +
                 static_cast<std::size_t>(k)];
  }
  std::size_t n_;
  std::vector<double> data_;
};

inline LieAlgebra so3_algebra() {
  TensorBuilder t(3);
  t.set(1, 2, 3, 1.0).set(2, 3, 1, 1.0).set(3, 1, 2, 1.0);
  return LieAlgebra(3, t.data());
}

inline std::vector<Eigen::MatrixXd> so3_generators() {
  Eigen::Matrix3d l1, l2, l3;
  l1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  l2 << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  l3 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return {l1, l2, l3};
}

/// SO(3)/SO(2): h = span{e3}, m = span{e1, e2}, base point = north pole.
inline std::shared_ptr<const ReductiveSpace> sphere_space() {
  Eigen::VectorXd pole(3);
  pole << 0, 0, 1;
  return std::make_shared<ReductiveSpace>(so3_algebra(), MatrixRep(so3_generators(), pole),
                                          std::vector<int>{2}, std::vector<int>{0, 1});
}

/// SO(3)/{e}: trivial stabilizer, base point = identity matrix.
inline std::shared_ptr<const ReductiveSpace> so3_group_space() {
  return std::make_shared<ReductiveSpace>(
      so3_algebra(), MatrixRep(so3_generators(), Eigen::MatrixXd::Identity(3, 3)),
      std::vector<int>{}, std::vector<int>{0, 1, 2});
}

/// eta(y) = norm(y) * [e3, y] on the sphere space.
inline SprayField tangential_field(std::shared_ptr<const ReductiveSpace> space) {
  return SprayField::bracket_form(space, {dsl::parse("norm()", space->q())});
}

/// eta(y) = norm(y) * y on the sphere space.
inline SprayField radial_field(std::shared_ptr<const ReductiveSpace> space) {
  std::vector<dsl::Expr> components;
  for (int i = 1; i <= space->q(); ++i) {
    components.push_back(dsl::parse("norm()*y" + std::to_string(i), space->q()));
  }
  return SprayField::components(space, std::move(components));
}

inline MVector mvec2(double a, double b) {
  MVector y(2);
  y << a, b;
  return y;
}

inline AlgebraVector avec3(double a, double b, double c) {
  AlgebraVector v(3);
  v << a, b, c;
  return v;
}

}  // namespace spraylab::testing
