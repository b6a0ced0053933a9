#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spraylab/certificate.hpp"
#include "spraylab/reductive.hpp"
#include "spraylab/rng.hpp"
#include "spraylab/spray_field.hpp"

namespace spraylab {

/// Least-squares tangency witness: the least-norm v in h minimizing
/// ||eta(y) - [v, y]||, as h-coordinates, the full algebra vector, and the
/// residual (identical to ReductiveSpace::tangency_residual by construction).
struct GoWitness {
  Eigen::VectorXd v_h;
  AlgebraVector v_full;
  double residual = 0.0;
};

GoWitness go_witness(const ReductiveSpace& space, const SprayField& field,
                     const MVector& y);

struct GoSample {
  MVector y;
  double residual = 0.0;
  Eigen::VectorXd witness_h;
  std::optional<std::string> error;
};

enum class GoVerdict { go_evidence, not_go, inconclusive };
std::string to_string(GoVerdict v);

struct GoCertificate {
  GoVerdict verdict = GoVerdict::inconclusive;
  std::uint64_t seed = 0;
  double pass_tolerance = 1e-8;
  double fail_tolerance = 1e-3;
  double max_residual = 0.0;
  bool had_eval_errors = false;
  std::vector<GoSample> samples;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const GoCertificate& cert);

struct ClassifyOptions {
  int samples = 200;
  std::uint64_t seed = kDefaultSeed;
  /// Samples are drawn on the unit sphere and multiplied by this factor;
  /// verdicts must be scale-invariant.
  double sample_scale = 1.0;
  int restarts = 16;
  int iterations = 100;
};

/// Samples unit-sphere directions in m and tests eta(y) in [h, y].
/// go_evidence iff every residual <= 1e-8; not_go iff some residual >= 1e-3;
/// the gap in between stays inconclusive.
GoCertificate check_go(const ReductiveSpace& space, const SprayField& field,
                       const ClassifyOptions& opts = {});

/// Best group element found for Ad(g) y = -y, explored over exponential
/// coordinates of the identity component of H. `value` is ||Ad(g) y + y||.
struct WsSearchResult {
  Eigen::VectorXd t;
  double value = 0.0;
};

/// Multi-start descent (Gauss-Newton on the finite-difference Jacobian with
/// backtracking line search) of ||Ad(exp(sum t_i e_i)) y + y||^2.
WsSearchResult ws_search(const ReductiveSpace& space, const MVector& y,
                         int restarts, int iterations, Rng& rng);

struct WsSample {
  MVector y;
  Eigen::VectorXd g_coords;
  double value = 0.0;
};

enum class WsVerdict { ws_algebraic_evidence, not_ws, inconclusive };
std::string to_string(WsVerdict v);

struct WsCertificate {
  WsVerdict verdict = WsVerdict::inconclusive;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  double max_value = 0.0;
  bool had_eval_errors = false;
  std::vector<WsSample> samples;
  PropertyCertificate evenness;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const WsCertificate& cert);

/// Runs ws_search on sampled directions and check_evenness on the field.
/// ws_algebraic_evidence iff every search reaches <= 1e-8 and evenness
/// passes; not_ws iff evenness fails (a necessary condition); a failed
/// search alone proves nothing and stays inconclusive.
WsCertificate check_ws(const ReductiveSpace& space, const SprayField& field,
                       const ClassifyOptions& opts = {});

struct FlowTangencyCertificate {
  bool refused = false;
  std::string refusal_reason;
  std::string ws_verdict;
  double max_tangency_residual = 0.0;
  /// Drift of the monitored Ad(H)-invariant ||y(t)|| along the flow
  /// (meaningful when the m-inner product is Ad(H)-invariant).
  double max_norm_drift = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const FlowTangencyCertificate& cert);

/// For a field whose check_ws verdict is ws_algebraic_evidence, integrates
/// the eta-flow from y0 and verifies that eta stays tangent to the
/// Ad(H)-orbit along the curve (the infinitesimal form of the flow staying
/// inside Ad(H) y0). Refuses to run when the precondition fails.
FlowTangencyCertificate verify_ws_flow_tangency(const ReductiveSpace& space,
                                                const SprayField& field,
                                                const MVector& y0, double t0,
                                                double t1, double step,
                                                const ClassifyOptions& opts = {});

}  // namespace spraylab
