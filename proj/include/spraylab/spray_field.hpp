#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "spraylab/certificate.hpp"
#include "spraylab/exprdsl.hpp"
#include "spraylab/reductive.hpp"
#include "spraylab/rng.hpp"

namespace spraylab {

enum class FieldKind {
  zero,          // eta = 0
  bracket_form,  // eta(y) = [sum_i b_i(y) e_i, y], coefficients over the h-basis
  components,    // one expression per m-coordinate
};

struct SampleOptions {
  int samples = 200;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> lambdas = {0.5, 2.0, 3.0};  // homogeneity scalings
  int group_samples = 8;                          // H draws per y sample
};

/// The spray vector field eta: m\{0} -> m as an evaluable object, with
/// sampled checkers for 2-homogeneity, Ad(H)-equivariance and evenness.
class SprayField {
public:
  static SprayField zero(std::shared_ptr<const ReductiveSpace> space);
  /// One coefficient expression per h-basis vector, each in y1..yq.
  static SprayField bracket_form(std::shared_ptr<const ReductiveSpace> space,
                                 std::vector<dsl::Expr> coefficients);
  /// One component expression per m-coordinate, each in y1..yq.
  static SprayField components(std::shared_ptr<const ReductiveSpace> space,
                               std::vector<dsl::Expr> components);

  FieldKind kind() const { return kind_; }
  const ReductiveSpace& space() const { return *space_; }
  std::shared_ptr<const ReductiveSpace> space_ptr() const { return space_; }
  const std::vector<dsl::Expr>& expressions() const { return exprs_; }

  /// eta(y) in m-coordinates. Requires y != 0.
  MVector eval(const MVector& y) const;

  /// Max over unit-sphere samples y and scalings lambda of
  /// ||eta(lambda y) - lambda^2 eta(y)|| / lambda^2. Pass at 1e-9.
  PropertyCertificate check_homogeneity(const SampleOptions& opts = {}) const;

  /// Max over samples of ||eta(Ad(g) y) - Ad(g) eta(y)|| for g = exp of
  /// h-coordinates drawn from [-pi, pi]^|h|. Pass at 1e-8; vacuous pass for
  /// empty h.
  PropertyCertificate check_equivariance(const SampleOptions& opts = {}) const;

  /// Max over samples of ||eta(y) - eta(-y)||. Pass at 1e-10.
  PropertyCertificate check_evenness(const SampleOptions& opts = {}) const;

private:
  SprayField(FieldKind kind, std::shared_ptr<const ReductiveSpace> space,
             std::vector<dsl::Expr> exprs);

  FieldKind kind_;
  std::shared_ptr<const ReductiveSpace> space_;
  std::vector<dsl::Expr> exprs_;
};

}  // namespace spraylab
