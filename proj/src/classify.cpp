#include "spraylab/classify.hpp"

#include <cmath>

#include "spraylab/errors.hpp"
#include "spraylab/flow.hpp"

namespace spraylab {

namespace {

const char* kIdentityComponentNote =
    "the search explores exponential coordinates of the identity component of H only; "
    "disconnected parts of H are not reached";
const char* kWsSemanticsNote =
    "the algebraic condition Ad(g)y = -y and evenness of the field are reported "
    "separately; ws_algebraic_evidence requires both, since reversing a geodesic also "
    "needs eta(y) = eta(-y) and the algebraic condition alone does not certify that for "
    "a non-reversible field";
const char* kInitialVelocityNote =
    "the reversal condition is checked on initial velocities only; one group element "
    "per full geodesic is what the definition asks and is not re-verified along curves";

nlohmann::json sample_vector(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

std::string to_string(GoVerdict v) {
  switch (v) {
    case GoVerdict::go_evidence: return "go_evidence";
    case GoVerdict::not_go: return "not_go";
    case GoVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(WsVerdict v) {
  switch (v) {
    case WsVerdict::ws_algebraic_evidence: return "ws_algebraic_evidence";
    case WsVerdict::not_ws: return "not_ws";
    case WsVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GoWitness go_witness(const ReductiveSpace& space, const SprayField& field,
                     const MVector& y) {
  const MVector eta_y = field.eval(y);
  auto [coeffs, residual] = space.solve_tangency(y, eta_y);
  GoWitness witness;
  witness.v_h = std::move(coeffs);
  witness.v_full = space.h_to_full(witness.v_h);
  witness.residual = residual;
  return witness;
}

GoCertificate check_go(const ReductiveSpace& space, const SprayField& field,
                       const ClassifyOptions& opts) {
  if (opts.samples < 1) throw InvalidInputError("check_go: samples must be >= 1");
  GoCertificate cert;
  cert.seed = opts.seed;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote};

  Rng rng(opts.seed);
  bool all_pass = true;
  bool any_fail = false;
  for (int s = 0; s < opts.samples; ++s) {
    GoSample sample;
    sample.y = opts.sample_scale * rng.unit_sphere(space.q());
    try {
      GoWitness witness = go_witness(space, field, sample.y);
      sample.residual = witness.residual;
      sample.witness_h = std::move(witness.v_h);
      cert.max_residual = std::max(cert.max_residual, sample.residual);
      // Residuals scale as ||y||^2 for a 2-homogeneous field; thresholds
      // follow so the verdict is invariant under y -> lambda y.
      const double scale2 = std::max(1.0, sample.y.squaredNorm());
      if (sample.residual > cert.pass_tolerance * scale2) all_pass = false;
      if (sample.residual >= cert.fail_tolerance * scale2) any_fail = true;
    } catch (const DomainError& err) {
      sample.error = err.what();
      cert.had_eval_errors = true;
    }
    cert.samples.push_back(std::move(sample));
  }

  if (cert.had_eval_errors) {
    cert.verdict = GoVerdict::inconclusive;
    cert.notes.push_back("field evaluation failed on some samples");
  } else if (all_pass) {
    cert.verdict = GoVerdict::go_evidence;
  } else if (any_fail) {
    cert.verdict = GoVerdict::not_go;
  } else {
    cert.verdict = GoVerdict::inconclusive;
    cert.notes.push_back("residuals fall between the pass and fail thresholds");
  }
  return cert;
}

WsSearchResult ws_search(const ReductiveSpace& space, const MVector& y,
                         int restarts, int iterations, Rng& rng) {
  if (y.size() != space.q()) throw InvalidInputError("ws_search: y has wrong dimension");
  if (y.norm() == 0.0) throw InvalidInputError("ws_search: y must be nonzero");

  const int p = space.h_dim();
  if (p == 0) {
    // Only g = e is available; the best achievable value is ||y + y||.
    return {Eigen::VectorXd::Zero(0), 2.0 * y.norm()};
  }

  auto residual_at = [&](const Eigen::VectorXd& t) -> Eigen::VectorXd {
    return space.adjoint_h_on_m(t) * y + y;
  };

  const double fd_step = 1e-6;
  Eigen::VectorXd best_t = Eigen::VectorXd::Zero(p);
  double best_phi = residual_at(best_t).squaredNorm();

  for (int start = 0; start < restarts; ++start) {
    Eigen::VectorXd t = rng.box(p, -M_PI, M_PI);
    Eigen::VectorXd r = residual_at(t);
    double phi = r.squaredNorm();
    for (int iter = 0; iter < iterations; ++iter) {
      if (phi <= 1e-30) break;
      Eigen::MatrixXd jac(space.q(), p);
      for (int i = 0; i < p; ++i) {
        Eigen::VectorXd t_plus = t;
        Eigen::VectorXd t_minus = t;
        t_plus[i] += fd_step;
        t_minus[i] -= fd_step;
        jac.col(i) = (residual_at(t_plus) - residual_at(t_minus)) / (2.0 * fd_step);
      }
      const Eigen::VectorXd gradient = 2.0 * jac.transpose() * r;
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
      Eigen::VectorXd direction = cod.solve(-r);
      if (!direction.allFinite() || direction.norm() == 0.0 ||
          gradient.dot(direction) >= 0.0) {
        direction = -gradient;  // fall back to steepest descent
        if (direction.norm() == 0.0) break;
      }
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        const Eigen::VectorXd t_next = t + alpha * direction;
        const Eigen::VectorXd r_next = residual_at(t_next);
        const double phi_next = r_next.squaredNorm();
        if (phi_next < phi) {
          t = t_next;
          r = r_next;
          phi = phi_next;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (phi < best_phi) {
      best_phi = phi;
      best_t = t;
    }
  }
  return {best_t, std::sqrt(best_phi)};
}

WsCertificate check_ws(const ReductiveSpace& space, const SprayField& field,
                       const ClassifyOptions& opts) {
  if (opts.samples < 1) throw InvalidInputError("check_ws: samples must be >= 1");
  WsCertificate cert;
  cert.seed = opts.seed;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote, kIdentityComponentNote,
                kWsSemanticsNote, kInitialVelocityNote};

  SampleOptions even_opts;
  even_opts.samples = opts.samples;
  even_opts.seed = opts.seed;
  cert.evenness = field.check_evenness(even_opts);

  Rng rng(opts.seed);
  bool all_reached = true;
  for (int s = 0; s < opts.samples; ++s) {
    WsSample sample;
    sample.y = opts.sample_scale * rng.unit_sphere(space.q());
    WsSearchResult result = ws_search(space, sample.y, opts.restarts, opts.iterations, rng);
    sample.g_coords = std::move(result.t);
    // Scale-free acceptance: the verdict must not depend on ||y||.
    sample.value = result.value;
    cert.max_value = std::max(cert.max_value, sample.value);
    if (sample.value > cert.tolerance * std::max(1.0, sample.y.norm())) all_reached = false;
    cert.samples.push_back(std::move(sample));
  }

  cert.had_eval_errors = cert.evenness.status == CheckStatus::inconclusive &&
                         !cert.evenness.sample_errors.empty();
  if (cert.evenness.status == CheckStatus::fail) {
    cert.verdict = WsVerdict::not_ws;
    cert.notes.push_back("evenness of the field fails, a necessary condition for weak symmetry");
  } else if (cert.had_eval_errors) {
    cert.verdict = WsVerdict::inconclusive;
    cert.notes.push_back("field evaluation failed on some evenness samples");
  } else if (all_reached && cert.evenness.status == CheckStatus::pass) {
    cert.verdict = WsVerdict::ws_algebraic_evidence;
  } else {
    cert.verdict = WsVerdict::inconclusive;
    bool none_reached = true;
    for (const auto& s : cert.samples) {
      if (s.value <= cert.tolerance * std::max(1.0, s.y.norm())) none_reached = false;
    }
    if (none_reached) {
      cert.notes.push_back("algebraic condition fails at all samples");
    } else {
      cert.notes.push_back("search did not reach the tolerance on some samples; "
                           "a failed search proves nothing");
    }
  }
  return cert;
}

FlowTangencyCertificate verify_ws_flow_tangency(const ReductiveSpace& space,
                                                const SprayField& field,
                                                const MVector& y0, double t0,
                                                double t1, double step,
                                                const ClassifyOptions& opts) {
  FlowTangencyCertificate cert;
  cert.notes = {kSampledEvidenceNote,
                "tangency along the curve is the checkable surrogate for membership in "
                "the Ad(H)-orbit, which has no closed form here"};

  const WsCertificate ws = check_ws(space, field, opts);
  cert.ws_verdict = to_string(ws.verdict);
  if (ws.verdict != WsVerdict::ws_algebraic_evidence) {
    cert.refused = true;
    cert.refusal_reason =
        "precondition failed: check_ws returned " + cert.ws_verdict +
        " (the flow-tangency check is only meaningful for ws-certified fields)";
    return cert;
  }

  const EtaFlow flow = integrate_eta_flow(field, y0, t0, t1, step);
  const double norm0 = y0.norm();
  for (const MVector& y : flow.y) {
    cert.max_tangency_residual =
        std::max(cert.max_tangency_residual, space.tangency_residual(y, field.eval(y)));
    cert.max_norm_drift = std::max(cert.max_norm_drift, std::abs(y.norm() - norm0));
  }
  cert.pass = cert.max_tangency_residual <= cert.tolerance;
  return cert;
}

nlohmann::json to_json(const GoCertificate& cert) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : cert.samples) {
    nlohmann::json record{{"y", sample_vector(s.y)}};
    if (s.error) {
      record["error"] = *s.error;
    } else {
      record["residual"] = s.residual;
      record["witness_h"] = sample_vector(s.witness_h);
    }
    samples.push_back(std::move(record));
  }
  return nlohmann::json{{"verdict", to_string(cert.verdict)},
                        {"seed", cert.seed},
                        {"tolerance", cert.pass_tolerance},
                        {"fail_tolerance", cert.fail_tolerance},
                        {"max_residual", cert.max_residual},
                        {"samples", std::move(samples)},
                        {"notes", cert.notes}};
}

nlohmann::json to_json(const WsCertificate& cert) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : cert.samples) {
    samples.push_back(nlohmann::json{{"y", sample_vector(s.y)},
                                     {"g_coords", sample_vector(s.g_coords)},
                                     {"value", s.value}});
  }
  return nlohmann::json{{"verdict", to_string(cert.verdict)},
                        {"seed", cert.seed},
                        {"tolerance", cert.tolerance},
                        {"max_residual", cert.max_value},
                        {"samples", std::move(samples)},
                        {"evenness", to_json(cert.evenness)},
                        {"notes", cert.notes}};
}

nlohmann::json to_json(const FlowTangencyCertificate& cert) {
  nlohmann::json out{{"verdict", cert.refused ? "refused" : (cert.pass ? "pass" : "fail")},
                     {"ws_verdict", cert.ws_verdict},
                     {"tolerance", cert.tolerance},
                     {"max_tangency_residual", cert.max_tangency_residual},
                     {"max_norm_drift", cert.max_norm_drift},
                     {"notes", cert.notes}};
  if (cert.refused) out["refusal_reason"] = cert.refusal_reason;
  return out;
}

}  // namespace spraylab
