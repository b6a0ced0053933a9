#include "spraylab/reductive.hpp"

#include <algorithm>
#include <cmath>

#include "spraylab/errors.hpp"

namespace spraylab {

namespace {

// Rank tolerance for the tangency least-squares solve, relative to the
// largest column norm; [h,y] can be rank-deficient.
constexpr double kRankTolerance = 1e-10;

}  // namespace

ReductiveSpace::ReductiveSpace(LieAlgebra algebra, MatrixRep rep,
                               std::vector<int> h_indices, std::vector<int> m_indices)
    : algebra_(std::move(algebra)),
      rep_(std::move(rep)),
      h_indices_(std::move(h_indices)),
      m_indices_(std::move(m_indices)) {
  const int n = algebra_.dim();
  if (rep_.algebra_dim() != n) {
    throw InvalidInputError("ReductiveSpace: representation size differs from algebra dimension");
  }
  std::sort(h_indices_.begin(), h_indices_.end());
  std::sort(m_indices_.begin(), m_indices_.end());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : h_indices_) {
    if (i < 0 || i >= n) throw InvalidInputError("ReductiveSpace: h index out of range");
    if (seen[static_cast<std::size_t>(i)]) {
      throw InvalidInputError("ReductiveSpace: overlapping or repeated indices");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
  for (int i : m_indices_) {
    if (i < 0 || i >= n) throw InvalidInputError("ReductiveSpace: m index out of range");
    if (seen[static_cast<std::size_t>(i)]) {
      throw InvalidInputError("ReductiveSpace: overlapping or repeated indices");
    }
    seen[static_cast<std::size_t>(i)] = true;
  }
  if (static_cast<int>(h_indices_.size() + m_indices_.size()) != n) {
    throw InvalidInputError("ReductiveSpace: h and m indices must cover the whole basis");
  }
  if (m_indices_.empty()) {
    throw InvalidInputError("ReductiveSpace: m must be nonempty");
  }
}

DecompositionCertificate ReductiveSpace::validate_decomposition(double tolerance) const {
  DecompositionCertificate cert;
  cert.tolerance = tolerance;
  for (int i : h_indices_) {
    const AlgebraVector ei = AlgebraVector::Unit(algebra_.dim(), i);
    for (int j : h_indices_) {
      const AlgebraVector b = algebra_.bracket(ei, AlgebraVector::Unit(algebra_.dim(), j));
      cert.subalgebra_residual =
          std::max(cert.subalgebra_residual, project_m(b).lpNorm<Eigen::Infinity>());
    }
    for (int j : m_indices_) {
      const AlgebraVector b = algebra_.bracket(ei, AlgebraVector::Unit(algebra_.dim(), j));
      cert.reductive_residual =
          std::max(cert.reductive_residual, project_h(b).lpNorm<Eigen::Infinity>());
    }
  }
  cert.pass = cert.subalgebra_residual <= tolerance && cert.reductive_residual <= tolerance;
  return cert;
}

double ReductiveSpace::stabilizer_residual() const {
  double residual = 0.0;
  for (int i : h_indices_) {
    const Eigen::MatrixXd g = matrix_exp(rep_.generators()[static_cast<std::size_t>(i)]);
    residual = std::max(residual,
                        (g * rep_.base_point() - rep_.base_point()).cwiseAbs().maxCoeff());
  }
  return residual;
}

AlgebraVector ReductiveSpace::project_h(const AlgebraVector& x) const {
  if (x.size() != algebra_.dim()) {
    throw InvalidInputError("project_h: vector has wrong dimension");
  }
  AlgebraVector out = AlgebraVector::Zero(algebra_.dim());
  for (int i : h_indices_) out[i] = x[i];
  return out;
}

AlgebraVector ReductiveSpace::project_m(const AlgebraVector& x) const {
  if (x.size() != algebra_.dim()) {
    throw InvalidInputError("project_m: vector has wrong dimension");
  }
  AlgebraVector out = AlgebraVector::Zero(algebra_.dim());
  for (int i : m_indices_) out[i] = x[i];
  return out;
}

AlgebraVector ReductiveSpace::m_to_full(const MVector& y) const {
  if (y.size() != q()) throw InvalidInputError("m_to_full: vector has wrong dimension");
  AlgebraVector out = AlgebraVector::Zero(algebra_.dim());
  for (int k = 0; k < q(); ++k) out[m_indices_[static_cast<std::size_t>(k)]] = y[k];
  return out;
}

MVector ReductiveSpace::full_to_m(const AlgebraVector& x) const {
  if (x.size() != algebra_.dim()) {
    throw InvalidInputError("full_to_m: vector has wrong dimension");
  }
  MVector out(q());
  for (int k = 0; k < q(); ++k) out[k] = x[m_indices_[static_cast<std::size_t>(k)]];
  return out;
}

AlgebraVector ReductiveSpace::h_to_full(const Eigen::VectorXd& h_coords) const {
  if (h_coords.size() != h_dim()) {
    throw InvalidInputError("h_to_full: vector has wrong dimension");
  }
  AlgebraVector out = AlgebraVector::Zero(algebra_.dim());
  for (int k = 0; k < h_dim(); ++k) out[h_indices_[static_cast<std::size_t>(k)]] = h_coords[k];
  return out;
}

Eigen::VectorXd ReductiveSpace::full_to_h(const AlgebraVector& x) const {
  if (x.size() != algebra_.dim()) {
    throw InvalidInputError("full_to_h: vector has wrong dimension");
  }
  Eigen::VectorXd out(h_dim());
  for (int k = 0; k < h_dim(); ++k) out[k] = x[h_indices_[static_cast<std::size_t>(k)]];
  return out;
}

Eigen::MatrixXd ReductiveSpace::rho_m(const MVector& y) const {
  return rep_.rho(m_to_full(y));
}

void ReductiveSpace::require_m(const MVector& y, const char* name) const {
  if (y.size() != q()) {
    throw InvalidInputError(std::string(name) + " has wrong m-dimension");
  }
  if (y.norm() == 0.0) {
    throw InvalidInputError(std::string(name) + " must be nonzero (domain is m\\{0})");
  }
}

Eigen::MatrixXd ReductiveSpace::orbit_tangent_basis(const MVector& y) const {
  require_m(y, "orbit_tangent_basis: y");
  const AlgebraVector y_full = m_to_full(y);
  Eigen::MatrixXd basis(q(), h_dim());
  for (int k = 0; k < h_dim(); ++k) {
    const AlgebraVector ei =
        AlgebraVector::Unit(algebra_.dim(), h_indices_[static_cast<std::size_t>(k)]);
    basis.col(k) = full_to_m(algebra_.bracket(ei, y_full));
  }
  return basis;
}

std::pair<Eigen::VectorXd, double> ReductiveSpace::solve_tangency(const MVector& y,
                                                                  const MVector& w) const {
  require_m(y, "solve_tangency: y");
  if (w.size() != q()) throw InvalidInputError("solve_tangency: w has wrong m-dimension");
  if (h_dim() == 0) return {Eigen::VectorXd::Zero(0), w.norm()};

  const Eigen::MatrixXd basis = orbit_tangent_basis(y);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(kRankTolerance);  // relative to the largest pivot
  cod.compute(basis);
  const Eigen::VectorXd coeffs = cod.solve(w);
  const double residual = (basis * coeffs - w).norm();
  return {coeffs, residual};
}

double ReductiveSpace::tangency_residual(const MVector& y, const MVector& w) const {
  return solve_tangency(y, w).second;
}

Eigen::MatrixXd ReductiveSpace::restrict_to_m(const Eigen::MatrixXd& a) const {
  if (a.rows() != algebra_.dim() || a.cols() != algebra_.dim()) {
    throw InvalidInputError("restrict_to_m: matrix has wrong size");
  }
  Eigen::MatrixXd out(q(), q());
  for (int r = 0; r < q(); ++r) {
    for (int c = 0; c < q(); ++c) {
      out(r, c) = a(m_indices_[static_cast<std::size_t>(r)],
                    m_indices_[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

Eigen::MatrixXd ReductiveSpace::adjoint_h_on_m(const Eigen::VectorXd& h_coords) const {
  return restrict_to_m(matrix_exp(algebra_.ad(h_to_full(h_coords))));
}

}  // namespace spraylab
