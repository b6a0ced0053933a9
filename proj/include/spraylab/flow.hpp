#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <vector>

#include "spraylab/reductive.hpp"
#include "spraylab/spray_field.hpp"

namespace spraylab {

/// Integral curve of -eta in m\{0}.
struct EtaFlow {
  std::vector<double> times;
  std::vector<MVector> y;
};

/// Group curve samples from the left-invariant reconstruction ODE
/// C'(t) = C(t) rho(y(t)), C(t0) = I.
struct GroupCurve {
  std::vector<Eigen::MatrixXd> c;
  /// Max norm over interior samples of the h-component of the re-expressed
  /// logarithmic derivative C^{-1} C' (C' estimated by central differences).
  /// This is the drift monitor for the lifting property; it is not enforced.
  double log_derivative_h_residual = 0.0;
};

/// Time-sampled geodesic record: the velocity curve y(t) in m, the group
/// curve c(t) in the representation, and the base-manifold curve c(t)*o.
struct Trajectory {
  std::vector<double> times;
  std::vector<MVector> y;
  std::vector<Eigen::MatrixXd> group;
  std::vector<Eigen::MatrixXd> points;  // N x 1 or N x N, matching the base point
  std::optional<double> log_derivative_h_residual;
};

struct WitnessOrbitCertificate {
  /// Tangency residual of eta at y0 (the precondition for the closed form).
  double precondition_residual = 0.0;
  /// Max over sample times of ||y_numeric(t) - Ad(exp(-t v)) y0||.
  double max_deviation = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
};

/// RK4 integration of y' = -eta(y) from y(t0) = y0. Throws FlowError with
/// the reached time on blow-up or when ||y|| < 1e-8 (domain exit).
EtaFlow integrate_eta_flow(const SprayField& field, const MVector& y0,
                           double t0, double t1, double step);

/// Solves C' = C rho(y(t)) with C = I at the first sample, interpolating
/// y(t) linearly between samples; one RK4 step per sample interval.
GroupCurve reconstruct_group_curve(const ReductiveSpace& space,
                                   const std::vector<double>& times,
                                   const std::vector<MVector>& y_samples);

/// Full geodesic through the base point: integrate the eta-flow, reconstruct
/// the group curve, and push the base point along it.
Trajectory geodesic(const ReductiveSpace& space, const SprayField& field,
                    const MVector& y0, double t0, double t1, double step);

/// Closed-form homogeneous geodesic exp(t rho(y0 - v)) * o for a witness
/// v in h; the velocity samples are the conjugation orbit Ad(exp(-t v)) y0.
/// No ODE solve.
Trajectory homogeneous_geodesic(const ReductiveSpace& space, const MVector& y0,
                                const AlgebraVector& v, double t0, double t1,
                                double step);

/// Verifies that the numeric integral curve of -eta through y0 matches the
/// conjugation orbit Ad(exp(-t v)) y0 produced by a tangency witness v.
WitnessOrbitCertificate verify_witness_orbit(const ReductiveSpace& space,
                                             const SprayField& field,
                                             const MVector& y0,
                                             const AlgebraVector& v, double t0,
                                             double t1, double step);

/// CSV schema (header mandatory, fixed column order):
/// t, y_1..y_q, c_1..c_{N^2} (row-major), point_1..point_P.
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace spraylab
