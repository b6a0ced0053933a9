#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spraylab/lie_core.hpp"

namespace spraylab {

struct DecompositionCertificate {
  double subalgebra_residual = 0.0;  // [h,h] components outside h
  double reductive_residual = 0.0;   // [h,m] components outside m
  double tolerance = 1e-12;
  bool pass = false;
};

/// Reductive homogeneous space data: a Lie algebra with a basis-aligned split
/// g = h + m, plus the matrix representation realizing the model G/H.
class ReductiveSpace {
public:
  /// Index sets are 0-based, must be disjoint and cover 0..dim-1.
  ReductiveSpace(LieAlgebra algebra, MatrixRep rep,
                 std::vector<int> h_indices, std::vector<int> m_indices);

  const LieAlgebra& algebra() const { return algebra_; }
  const MatrixRep& rep() const { return rep_; }
  const std::vector<int>& h_indices() const { return h_indices_; }
  const std::vector<int>& m_indices() const { return m_indices_; }
  int h_dim() const { return static_cast<int>(h_indices_.size()); }
  int q() const { return static_cast<int>(m_indices_.size()); }

  /// Residuals of the [h,h] in h and [h,m] in m checks.
  DecompositionCertificate validate_decomposition(double tolerance = 1e-12) const;

  /// Max over h-basis elements of ||exp(rho(e_i)) o - o||_inf.
  double stabilizer_residual() const;

  AlgebraVector project_h(const AlgebraVector& x) const;
  AlgebraVector project_m(const AlgebraVector& x) const;

  AlgebraVector m_to_full(const MVector& y) const;
  MVector full_to_m(const AlgebraVector& x) const;
  AlgebraVector h_to_full(const Eigen::VectorXd& h_coords) const;
  Eigen::VectorXd full_to_h(const AlgebraVector& x) const;

  /// rho of an m-vector, sugar for rep().rho(m_to_full(y)).
  Eigen::MatrixXd rho_m(const MVector& y) const;

  /// Spanning set of [h, y] in m-coordinates, one column per h-basis vector
  /// (not necessarily independent). Requires y != 0.
  Eigen::MatrixXd orbit_tangent_basis(const MVector& y) const;

  /// Euclidean distance in m-coordinates from w to span([h, y]), computed by
  /// a rank-revealing least-squares solve. Requires y != 0.
  double tangency_residual(const MVector& y, const MVector& w) const;

  /// Least-norm v in h minimizing ||[v, y] - w|| together with the residual.
  /// The returned vector holds h-coordinates (length h_dim()).
  std::pair<Eigen::VectorXd, double> solve_tangency(const MVector& y,
                                                    const MVector& w) const;

  /// Submatrix of an n x n coordinate matrix acting on the m block.
  Eigen::MatrixXd restrict_to_m(const Eigen::MatrixXd& a) const;

  /// Ad(exp(sum t_i e_i)) restricted to m, for h-coordinates t.
  Eigen::MatrixXd adjoint_h_on_m(const Eigen::VectorXd& h_coords) const;

private:
  void require_m(const MVector& y, const char* name) const;

  LieAlgebra algebra_;
  MatrixRep rep_;
  std::vector<int> h_indices_;
  std::vector<int> m_indices_;
};

}  // namespace spraylab
