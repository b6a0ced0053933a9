#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "spraylab/certificate.hpp"
#include "spraylab/exprdsl.hpp"
#include "spraylab/spray_field.hpp"

namespace spraylab {

/// Chart samples of a geodesic: positions x(t) and velocities y(t).
struct ChartTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> y;
};

/// Coordinate-chart spray structure: d coefficient expressions G^i(x, y),
/// each positively 2-homogeneous in y. Provides the geodesic ODE
/// x'' + 2 G(x, x') = 0 as an independent oracle route.
class LocalSpray {
public:
  LocalSpray(int dim, std::vector<dsl::Expr> coefficients);

  int dim() const { return dim_; }
  const std::vector<dsl::Expr>& coefficients() const { return coefficients_; }

  Eigen::VectorXd coefficients_at(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) const;

  /// (x', y') = (y, -2 G(x, y)). Requires y != 0.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> geodesic_ode_rhs(
      const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Fixed-step RK4 on (x, y). Throws FlowError when ||y|| drops below 1e-8
  /// (the state leaves the slit tangent bundle) or the state turns
  /// non-finite, reporting the reached time.
  ChartTrajectory integrate(const Eigen::VectorXd& x0, const Eigen::VectorXd& y0,
                            double t0, double t1, double step) const;

  /// Sampled 2-homogeneity check of the coefficients in y, with chart
  /// positions drawn from the given box (one [lo, hi] pair per coordinate).
  PropertyCertificate check_homogeneity(
      const std::vector<std::pair<double, double>>& x_box,
      const SampleOptions& opts = {}) const;

private:
  int dim_;
  std::vector<dsl::Expr> coefficients_;
};

}  // namespace spraylab
