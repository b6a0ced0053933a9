#include "spraylab/local_spray.hpp"

#include <cmath>

#include "spraylab/errors.hpp"
#include "spraylab/rk4.hpp"
#include "spraylab/rng.hpp"

namespace spraylab {

int uniform_step_count(double t0, double t1, double step) {
  if (!(step > 0.0)) throw InvalidInputError("step must be positive");
  const double span = std::abs(t1 - t0);
  if (span == 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(span / step - 1e-9)));
}

LocalSpray::LocalSpray(int dim, std::vector<dsl::Expr> coefficients)
    : dim_(dim), coefficients_(std::move(coefficients)) {
  if (dim_ <= 0) throw InvalidInputError("LocalSpray: dimension must be positive");
  if (static_cast<int>(coefficients_.size()) != dim_) {
    throw InvalidInputError("LocalSpray: one coefficient per chart dimension required");
  }
  for (const auto& e : coefficients_) {
    if (e.x_dim != dim_ || e.y_dim != dim_) {
      throw InvalidInputError("LocalSpray: coefficients must be chart expressions in x1..xd, y1..yd");
    }
  }
}

Eigen::VectorXd LocalSpray::coefficients_at(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& y) const {
  Eigen::VectorXd g(dim_);
  for (int i = 0; i < dim_; ++i) {
    g[i] = dsl::eval(coefficients_[static_cast<std::size_t>(i)], x, y);
  }
  return g;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> LocalSpray::geodesic_ode_rhs(
    const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw InvalidInputError("geodesic_ode_rhs: state has wrong dimension");
  }
  if (y.norm() == 0.0) {
    throw InvalidInputError("geodesic_ode_rhs: y must be nonzero (slit tangent bundle)");
  }
  return {y, -2.0 * coefficients_at(x, y)};
}

ChartTrajectory LocalSpray::integrate(const Eigen::VectorXd& x0, const Eigen::VectorXd& y0,
                                      double t0, double t1, double step) const {
  if (x0.size() != dim_ || y0.size() != dim_) {
    throw InvalidInputError("integrate: state has wrong dimension");
  }
  if (y0.norm() == 0.0) throw InvalidInputError("integrate: y0 must be nonzero");

  const int n_steps = uniform_step_count(t0, t1, step);
  const double h = n_steps == 0 ? 0.0 : (t1 - t0) / n_steps;

  // Joint state (x, y) stacked into one vector.
  Eigen::VectorXd state(2 * dim_);
  state.head(dim_) = x0;
  state.tail(dim_) = y0;

  auto rhs = [this](double, const Eigen::VectorXd& s) {
    Eigen::VectorXd out(2 * dim_);
    const Eigen::VectorXd x = s.head(dim_);
    const Eigen::VectorXd y = s.tail(dim_);
    out.head(dim_) = y;
    out.tail(dim_) = -2.0 * coefficients_at(x, y);
    return out;
  };

  ChartTrajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.times.push_back(t0);
  traj.x.push_back(x0);
  traj.y.push_back(y0);
  for (int k = 0; k < n_steps; ++k) {
    const double t = t0 + k * h;
    state = rk4_step(rhs, t, state, h);
    const double t_next = t0 + (k + 1) * h;
    if (!state.allFinite()) {
      throw FlowError(FlowError::Kind::blow_up, t, "chart integration blew up");
    }
    if (state.tail(dim_).norm() < 1e-8) {
      throw FlowError(FlowError::Kind::domain_exit, t_next,
                      "velocity left the slit tangent bundle");
    }
    traj.times.push_back(t_next);
    traj.x.push_back(state.head(dim_));
    traj.y.push_back(state.tail(dim_));
  }
  return traj;
}

PropertyCertificate LocalSpray::check_homogeneity(
    const std::vector<std::pair<double, double>>& x_box,
    const SampleOptions& opts) const {
  if (static_cast<int>(x_box.size()) != dim_) {
    throw InvalidInputError("check_homogeneity: one box interval per chart dimension required");
  }
  PropertyCertificate cert;
  cert.check = "chart_homogeneity";
  cert.seed = opts.seed;
  cert.samples = opts.samples;
  cert.tolerance = 1e-9;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote};
  if (opts.samples < 1) throw InvalidInputError("check_homogeneity: samples must be >= 1");

  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    Eigen::VectorXd x(dim_);
    for (int i = 0; i < dim_; ++i) {
      x[i] = rng.uniform(x_box[static_cast<std::size_t>(i)].first,
                         x_box[static_cast<std::size_t>(i)].second);
    }
    const Eigen::VectorXd y = rng.unit_sphere(dim_);
    try {
      const Eigen::VectorXd g = coefficients_at(x, y);
      for (double lambda : opts.lambdas) {
        const Eigen::VectorXd g_scaled = coefficients_at(x, lambda * y);
        const double residual = (g_scaled - lambda * lambda * g).norm() / (lambda * lambda);
        cert.max_residual = std::max(cert.max_residual, residual);
      }
    } catch (const DomainError& err) {
      cert.sample_errors.push_back(err.what());
    }
  }
  if (!cert.sample_errors.empty()) {
    cert.status = CheckStatus::inconclusive;
  } else {
    cert.status = cert.max_residual <= cert.tolerance ? CheckStatus::pass : CheckStatus::fail;
  }
  return cert;
}

}  // namespace spraylab
