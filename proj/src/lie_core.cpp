#include "spraylab/lie_core.hpp"

#include <cmath>

#include "spraylab/errors.hpp"

namespace spraylab {

namespace {

// Pade(13,13) numerator coefficients; theta is the 1-norm bound below which
// the approximant is accurate to double precision (Higham's constant).
constexpr double kPade13Theta = 5.371920351148152;
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInputError("matrix_exp: matrix must be square");
  }
  if (!m.allFinite()) {
    throw InvalidInputError("matrix_exp: non-finite entries");
  }
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kPade13Theta) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kPade13Theta)));
  }
  const Eigen::MatrixXd a = m / std::pow(2.0, squarings);

  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a2 * a4;
  const Eigen::MatrixXd u =
      a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
           kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * id);
  const Eigen::MatrixXd v =
      a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
      kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

LieAlgebra::LieAlgebra(int dim, const std::vector<double>& structure_constants,
                       std::vector<std::string> basis_labels)
    : dim_(dim), labels_(std::move(basis_labels)) {
  if (dim <= 0) {
    throw InvalidInputError("LieAlgebra: dimension must be positive");
  }
  const std::size_t n = static_cast<std::size_t>(dim);
  if (structure_constants.size() != n * n * n) {
    throw InvalidInputError("LieAlgebra: structure constant tensor must have dim^3 entries");
  }
  ad_basis_.resize(n, Eigen::MatrixXd::Zero(dim, dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        ad_basis_[i](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            structure_constants[(i * n + j) * n + k];
      }
    }
  }
  if (labels_.empty()) {
    for (int i = 1; i <= dim; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != dim) {
    throw InvalidInputError("LieAlgebra: one label per basis vector required");
  }
}

void LieAlgebra::require_dim(const AlgebraVector& x, const char* name) const {
  if (x.size() != dim_) {
    throw InvalidInputError(std::string("LieAlgebra: ") + name + " has dimension " +
                            std::to_string(x.size()) + ", expected " +
                            std::to_string(dim_));
  }
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  require_dim(x, "x");
  require_dim(y, "y");
  AlgebraVector out = AlgebraVector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] != 0.0) out += x[i] * (ad_basis_[i] * y);
  }
  return out;
}

Eigen::MatrixXd LieAlgebra::ad(const AlgebraVector& x) const {
  require_dim(x, "x");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] != 0.0) out += x[i] * ad_basis_[i];
  }
  return out;
}

Eigen::MatrixXd LieAlgebra::adjoint_of_exp(const AlgebraVector& v, double t) const {
  return matrix_exp(t * ad(v));
}

AlgebraCheck LieAlgebra::validate(double tolerance) const {
  AlgebraCheck check;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        check.antisymmetry_residual =
            std::max(check.antisymmetry_residual, std::abs(c(i, j, k) + c(j, i, k)));
      }
    }
  }
  for (int i = 0; i < dim_; ++i) {
    const AlgebraVector ei = AlgebraVector::Unit(dim_, i);
    for (int j = 0; j < dim_; ++j) {
      const AlgebraVector ej = AlgebraVector::Unit(dim_, j);
      for (int k = 0; k < dim_; ++k) {
        const AlgebraVector ek = AlgebraVector::Unit(dim_, k);
        const AlgebraVector residual = bracket(bracket(ei, ej), ek) +
                                       bracket(bracket(ej, ek), ei) +
                                       bracket(bracket(ek, ei), ej);
        check.jacobi_residual =
            std::max(check.jacobi_residual, residual.lpNorm<Eigen::Infinity>());
      }
    }
  }
  check.pass = check.antisymmetry_residual <= tolerance &&
               check.jacobi_residual <= tolerance;
  return check;
}

MatrixRep::MatrixRep(std::vector<Eigen::MatrixXd> generators, Eigen::MatrixXd base_point)
    : generators_(std::move(generators)), base_point_(std::move(base_point)) {
  if (generators_.empty()) {
    throw InvalidInputError("MatrixRep: at least one generator required");
  }
  n_rep_ = static_cast<int>(generators_.front().rows());
  for (const auto& g : generators_) {
    if (g.rows() != n_rep_ || g.cols() != n_rep_) {
      throw InvalidInputError("MatrixRep: all generators must be square of equal size");
    }
  }
  if (base_point_.rows() != n_rep_ ||
      (base_point_.cols() != 1 && base_point_.cols() != n_rep_)) {
    throw InvalidInputError("MatrixRep: base point must be an N-vector or N x N matrix");
  }
  const int n = algebra_dim();
  vec_generators_.resize(static_cast<Eigen::Index>(n_rep_) * n_rep_, n);
  for (int i = 0; i < n; ++i) {
    vec_generators_.col(i) =
        Eigen::Map<const Eigen::VectorXd>(generators_[i].data(),
                                          static_cast<Eigen::Index>(n_rep_) * n_rep_);
  }
  vec_solver_.compute(vec_generators_);
}

Eigen::MatrixXd MatrixRep::rho(const AlgebraVector& x) const {
  if (x.size() != algebra_dim()) {
    throw InvalidInputError("MatrixRep: coordinate vector has wrong dimension");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_rep_, n_rep_);
  for (int i = 0; i < algebra_dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * generators_[i];
  }
  return out;
}

double MatrixRep::representation_residual(const LieAlgebra& algebra) const {
  if (algebra.dim() != algebra_dim()) {
    throw InvalidInputError("MatrixRep: generator count differs from algebra dimension");
  }
  double residual = 0.0;
  for (int i = 0; i < algebra_dim(); ++i) {
    for (int j = 0; j < algebra_dim(); ++j) {
      Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(n_rep_, n_rep_);
      for (int k = 0; k < algebra_dim(); ++k) {
        const double c = algebra.c(i, j, k);
        if (c != 0.0) lhs += c * generators_[k];
      }
      const Eigen::MatrixXd rhs =
          generators_[i] * generators_[j] - generators_[j] * generators_[i];
      residual = std::max(residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return residual;
}

AlgebraVector MatrixRep::to_coords(const Eigen::MatrixXd& m, double fail_tolerance) const {
  if (m.rows() != n_rep_ || m.cols() != n_rep_) {
    throw InvalidInputError("MatrixRep: matrix has wrong size for re-expression");
  }
  const Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(n_rep_) * n_rep_);
  const AlgebraVector coords = vec_solver_.solve(target);
  const double residual = (vec_generators_ * coords - target).norm();
  if (residual > fail_tolerance) {
    throw InvalidInputError(
        "MatrixRep: matrix is not in the span of the generators (residual " +
        std::to_string(residual) + ")");
  }
  return coords;
}

std::pair<AlgebraVector, double> MatrixRep::project_coords(const Eigen::MatrixXd& m) const {
  if (m.rows() != n_rep_ || m.cols() != n_rep_) {
    throw InvalidInputError("MatrixRep: matrix has wrong size for re-expression");
  }
  const Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(m.data(), static_cast<Eigen::Index>(n_rep_) * n_rep_);
  const AlgebraVector coords = vec_solver_.solve(target);
  return {coords, (vec_generators_ * coords - target).norm()};
}

double MatrixRep::coords_residual(const Eigen::MatrixXd& m) const {
  return project_coords(m).second;
}

}  // namespace spraylab
