#pragma once

namespace spraylab {

/// One classic fourth-order Runge-Kutta step. State must support scaling and
/// addition (Eigen vectors and matrices both do).
template <typename State, typename Rhs>
State rk4_step(const Rhs& rhs, double t, const State& x, double h) {
  const State k1 = rhs(t, x);
  const State k2 = rhs(t + 0.5 * h, State(x + (0.5 * h) * k1));
  const State k3 = rhs(t + 0.5 * h, State(x + (0.5 * h) * k2));
  const State k4 = rhs(t + h, State(x + h * k3));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of uniform steps covering [t0, t1] with width as close to `step`
/// as possible; the width is adjusted so the grid lands on t1 exactly.
int uniform_step_count(double t0, double t1, double step);

}  // namespace spraylab
