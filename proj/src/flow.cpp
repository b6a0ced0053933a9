#include "spraylab/flow.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "spraylab/errors.hpp"
#include "spraylab/rk4.hpp"

namespace spraylab {

EtaFlow integrate_eta_flow(const SprayField& field, const MVector& y0,
                           double t0, double t1, double step) {
  const ReductiveSpace& space = field.space();
  if (y0.size() != space.q()) throw InvalidInputError("integrate_eta_flow: y0 has wrong dimension");
  if (y0.norm() == 0.0) throw InvalidInputError("integrate_eta_flow: y0 must be nonzero");

  const int n_steps = uniform_step_count(t0, t1, step);
  const double h = n_steps == 0 ? 0.0 : (t1 - t0) / n_steps;

  auto rhs = [&field](double, const MVector& y) -> MVector { return -field.eval(y); };

  EtaFlow flow;
  flow.times.reserve(static_cast<std::size_t>(n_steps) + 1);
  flow.times.push_back(t0);
  flow.y.push_back(y0);
  MVector y = y0;
  for (int k = 0; k < n_steps; ++k) {
    const double t = t0 + k * h;
    y = rk4_step(rhs, t, y, h);
    if (!y.allFinite()) {
      throw FlowError(FlowError::Kind::blow_up, t, "eta-flow blew up");
    }
    if (y.norm() < 1e-8) {
      throw FlowError(FlowError::Kind::domain_exit, t0 + (k + 1) * h,
                      "eta-flow left m\\{0}");
    }
    flow.times.push_back(t0 + (k + 1) * h);
    flow.y.push_back(y);
  }
  return flow;
}

GroupCurve reconstruct_group_curve(const ReductiveSpace& space,
                                   const std::vector<double>& times,
                                   const std::vector<MVector>& y_samples) {
  if (times.size() != y_samples.size() || times.empty()) {
    throw InvalidInputError("reconstruct_group_curve: times and samples must match and be nonempty");
  }
  const int n_rep = space.rep().rep_size();

  GroupCurve curve;
  curve.c.reserve(times.size());
  curve.c.push_back(Eigen::MatrixXd::Identity(n_rep, n_rep));

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double ta = times[k];
    const double tb = times[k + 1];
    const double h = tb - ta;
    const MVector& ya = y_samples[k];
    const MVector& yb = y_samples[k + 1];
    auto rhs = [&](double t, const Eigen::MatrixXd& c) -> Eigen::MatrixXd {
      const double s = h == 0.0 ? 0.0 : (t - ta) / h;
      const MVector y_interp = (1.0 - s) * ya + s * yb;
      return c * space.rho_m(y_interp);
    };
    Eigen::MatrixXd next = rk4_step(rhs, ta, curve.c.back(), h);
    if (!next.allFinite()) {
      throw FlowError(FlowError::Kind::blow_up, ta, "group-curve reconstruction blew up");
    }
    curve.c.push_back(std::move(next));
  }

  // Drift monitor: central-difference logarithmic derivative, re-expressed in
  // algebra coordinates; its h-component should vanish.
  for (std::size_t k = 1; k + 1 < curve.c.size(); ++k) {
    const double dt = times[k + 1] - times[k - 1];
    if (dt == 0.0) continue;
    const Eigen::MatrixXd derivative = (curve.c[k + 1] - curve.c[k - 1]) / dt;
    const Eigen::MatrixXd log_derivative = curve.c[k].partialPivLu().solve(derivative);
    const AlgebraVector coords = space.rep().project_coords(log_derivative).first;
    curve.log_derivative_h_residual =
        std::max(curve.log_derivative_h_residual, space.full_to_h(coords).norm());
  }
  return curve;
}

Trajectory geodesic(const ReductiveSpace& space, const SprayField& field,
                    const MVector& y0, double t0, double t1, double step) {
  const EtaFlow flow = integrate_eta_flow(field, y0, t0, t1, step);
  GroupCurve curve = reconstruct_group_curve(space, flow.times, flow.y);

  Trajectory traj;
  traj.times = flow.times;
  traj.y = flow.y;
  traj.group = std::move(curve.c);
  traj.points.reserve(traj.group.size());
  for (const auto& g : traj.group) traj.points.push_back(g * space.rep().base_point());
  traj.log_derivative_h_residual = curve.log_derivative_h_residual;
  return traj;
}

Trajectory homogeneous_geodesic(const ReductiveSpace& space, const MVector& y0,
                                const AlgebraVector& v, double t0, double t1,
                                double step) {
  if (y0.size() != space.q()) throw InvalidInputError("homogeneous_geodesic: y0 has wrong dimension");
  if (y0.norm() == 0.0) throw InvalidInputError("homogeneous_geodesic: y0 must be nonzero");
  if (v.size() != space.algebra().dim()) {
    throw InvalidInputError("homogeneous_geodesic: v has wrong dimension");
  }
  if (space.project_m(v).norm() > 1e-12) {
    throw InvalidInputError("homogeneous_geodesic: v must lie in h");
  }

  const AlgebraVector y0_full = space.m_to_full(y0);
  const AlgebraVector u = y0_full - v;
  const Eigen::MatrixXd rho_u = space.rep().rho(u);

  const int n_steps = uniform_step_count(t0, t1, step);
  const double h = n_steps == 0 ? 0.0 : (t1 - t0) / n_steps;

  Trajectory traj;
  for (int k = 0; k <= n_steps; ++k) {
    const double t = k == n_steps ? t1 : t0 + k * h;
    traj.times.push_back(t);
    traj.y.push_back(space.full_to_m(space.algebra().adjoint_of_exp(v, -t) * y0_full));
    traj.group.push_back(matrix_exp(t * rho_u));
    traj.points.push_back(traj.group.back() * space.rep().base_point());
  }
  return traj;
}

WitnessOrbitCertificate verify_witness_orbit(const ReductiveSpace& space,
                                             const SprayField& field,
                                             const MVector& y0,
                                             const AlgebraVector& v, double t0,
                                             double t1, double step) {
  WitnessOrbitCertificate cert;
  cert.precondition_residual = space.tangency_residual(y0, field.eval(y0));

  const EtaFlow flow = integrate_eta_flow(field, y0, t0, t1, step);
  const AlgebraVector y0_full = space.m_to_full(y0);
  for (std::size_t k = 0; k < flow.times.size(); ++k) {
    const MVector closed_form =
        space.full_to_m(space.algebra().adjoint_of_exp(v, -flow.times[k]) * y0_full);
    cert.max_deviation = std::max(cert.max_deviation, (flow.y[k] - closed_form).norm());
  }
  cert.pass = cert.max_deviation <= cert.tolerance;
  return cert;
}

namespace {

void append_double(std::string& line, double v) {
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, result.ptr);
}

}  // namespace

void write_csv(const Trajectory& traj, std::ostream& out) {
  if (traj.times.empty()) throw InvalidInputError("write_csv: empty trajectory");
  const int q = static_cast<int>(traj.y.front().size());
  const Eigen::Index n = traj.group.front().rows();
  const Eigen::Index point_rows = traj.points.front().rows();
  const Eigen::Index point_cols = traj.points.front().cols();

  std::string line = "t";
  for (int i = 1; i <= q; ++i) line += ",y_" + std::to_string(i);
  for (Eigen::Index i = 1; i <= n * n; ++i) line += ",c_" + std::to_string(i);
  for (Eigen::Index i = 1; i <= point_rows * point_cols; ++i) {
    line += ",point_" + std::to_string(i);
  }
  out << line << "\n";

  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    line.clear();
    append_double(line, traj.times[k]);
    for (int i = 0; i < q; ++i) {
      line += ',';
      append_double(line, traj.y[k][i]);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        line += ',';
        append_double(line, traj.group[k](r, c));
      }
    }
    for (Eigen::Index r = 0; r < point_rows; ++r) {
      for (Eigen::Index c = 0; c < point_cols; ++c) {
        line += ',';
        append_double(line, traj.points[k](r, c));
      }
    }
    out << line << "\n";
  }
}

}  // namespace spraylab
