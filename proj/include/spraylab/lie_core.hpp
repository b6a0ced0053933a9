#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace spraylab {

/// Element of a Lie algebra in the e_i basis. Dimension is carried by the
/// vector itself; operations check it against the algebra they run in.
using AlgebraVector = Eigen::VectorXd;

/// Element of the subspace m in the m-basis (dimension q = |m_indices|).
using MVector = Eigen::VectorXd;

/// e^M by scaling-and-squaring with a fixed Pade(13,13) core.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

struct AlgebraCheck {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  bool pass = false;
};

/// Finite-dimensional real Lie algebra given by structure constants
/// c[i][j][k], meaning [e_i, e_j] = sum_k c[i][j][k] e_k.
class LieAlgebra {
public:
  /// `structure_constants` is the dense rank-3 tensor flattened with index
  /// (i*n + j)*n + k. Labels default to e1..en.
  LieAlgebra(int dim, const std::vector<double>& structure_constants,
             std::vector<std::string> basis_labels = {});

  int dim() const { return dim_; }
  double c(int i, int j, int k) const { return ad_basis_[i](k, j); }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  /// ad(e_i) as a matrix acting on coordinates: ad(e_i) z = [e_i, z].
  const Eigen::MatrixXd& ad_basis(int i) const { return ad_basis_[i]; }

  /// [x, y], bilinear and antisymmetric.
  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;

  /// Matrix of ad(x): ad(x) z = [x, z]. Linear in x.
  Eigen::MatrixXd ad(const AlgebraVector& x) const;

  /// Ad(exp(t v)) = e^{t ad(v)} acting on coordinates.
  Eigen::MatrixXd adjoint_of_exp(const AlgebraVector& v, double t) const;

  /// Antisymmetry and Jacobi residuals (max norm over basis tuples).
  AlgebraCheck validate(double tolerance = 1e-12) const;

private:
  void require_dim(const AlgebraVector& x, const char* name) const;

  int dim_;
  std::vector<Eigen::MatrixXd> ad_basis_;
  std::vector<std::string> labels_;
};

/// Faithful real matrix representation realizing group elements, exp, Ad and
/// the base-point action of the model G/H.
class MatrixRep {
public:
  /// `base_point` is either an N-vector (stored as N x 1) or an N x N matrix;
  /// group elements act on it by left multiplication.
  MatrixRep(std::vector<Eigen::MatrixXd> generators, Eigen::MatrixXd base_point);

  int rep_size() const { return n_rep_; }
  int algebra_dim() const { return static_cast<int>(generators_.size()); }
  const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }
  const Eigen::MatrixXd& base_point() const { return base_point_; }
  bool base_point_is_matrix() const { return base_point_.cols() > 1; }

  /// rho(x) = sum_i x_i rho(e_i).
  Eigen::MatrixXd rho(const AlgebraVector& x) const;

  /// Max over basis pairs of ||rho([e_i,e_j]) - [rho(e_i), rho(e_j)]||_inf.
  double representation_residual(const LieAlgebra& algebra) const;

  /// Re-expresses a matrix in algebra coordinates by least squares against
  /// the generators. Throws InvalidInputError if the residual exceeds
  /// `fail_tolerance` (the matrix is not in the image of rho).
  AlgebraVector to_coords(const Eigen::MatrixXd& m,
                          double fail_tolerance = 1e-8) const;

  /// Least-squares re-expression without the failure gate: coordinates plus
  /// the out-of-span residual.
  std::pair<AlgebraVector, double> project_coords(const Eigen::MatrixXd& m) const;

  /// Residual of the least-squares re-expression without the failure gate.
  double coords_residual(const Eigen::MatrixXd& m) const;

private:
  int n_rep_;
  std::vector<Eigen::MatrixXd> generators_;
  Eigen::MatrixXd base_point_;
  Eigen::MatrixXd vec_generators_;  // N^2 x n, column i = vec(rho(e_i))
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> vec_solver_;
};

}  // namespace spraylab
