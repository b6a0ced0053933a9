#include "spraylab/spray_field.hpp"

#include <cmath>

#include "spraylab/errors.hpp"

namespace spraylab {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

nlohmann::json to_json(const PropertyCertificate& cert) {
  return nlohmann::json{{"check", cert.check},
                        {"verdict", to_string(cert.status)},
                        {"seed", cert.seed},
                        {"samples", cert.samples},
                        {"tolerance", cert.tolerance},
                        {"max_residual", cert.max_residual},
                        {"notes", cert.notes},
                        {"sample_errors", cert.sample_errors}};
}

SprayField::SprayField(FieldKind kind, std::shared_ptr<const ReductiveSpace> space,
                       std::vector<dsl::Expr> exprs)
    : kind_(kind), space_(std::move(space)), exprs_(std::move(exprs)) {
  if (!space_) throw InvalidInputError("SprayField: space is required");
}

SprayField SprayField::zero(std::shared_ptr<const ReductiveSpace> space) {
  return SprayField(FieldKind::zero, std::move(space), {});
}

SprayField SprayField::bracket_form(std::shared_ptr<const ReductiveSpace> space,
                                    std::vector<dsl::Expr> coefficients) {
  if (!space) throw InvalidInputError("SprayField: space is required");
  if (static_cast<int>(coefficients.size()) != space->h_dim()) {
    throw InvalidInputError("SprayField: bracket_form needs one coefficient per h-basis vector");
  }
  for (const auto& e : coefficients) {
    if (e.y_dim != space->q() || e.x_dim != 0) {
      throw InvalidInputError("SprayField: coefficient expressions must be in y1..yq");
    }
  }
  return SprayField(FieldKind::bracket_form, std::move(space), std::move(coefficients));
}

SprayField SprayField::components(std::shared_ptr<const ReductiveSpace> space,
                                  std::vector<dsl::Expr> components) {
  if (!space) throw InvalidInputError("SprayField: space is required");
  if (static_cast<int>(components.size()) != space->q()) {
    throw InvalidInputError("SprayField: needs one component per m-coordinate");
  }
  for (const auto& e : components) {
    if (e.y_dim != space->q() || e.x_dim != 0) {
      throw InvalidInputError("SprayField: component expressions must be in y1..yq");
    }
  }
  return SprayField(FieldKind::components, std::move(space), std::move(components));
}

MVector SprayField::eval(const MVector& y) const {
  if (y.size() != space_->q()) throw InvalidInputError("eval: y has wrong m-dimension");
  if (y.norm() == 0.0) throw InvalidInputError("eval: y must be nonzero (domain is m\\{0})");
  switch (kind_) {
    case FieldKind::zero:
      return MVector::Zero(space_->q());
    case FieldKind::bracket_form: {
      Eigen::VectorXd coeffs(space_->h_dim());
      for (int i = 0; i < space_->h_dim(); ++i) {
        coeffs[i] = dsl::eval(exprs_[static_cast<std::size_t>(i)], y);
      }
      const AlgebraVector v = space_->h_to_full(coeffs);
      // [v, y] already lies in m by reductiveness; taking m-coordinates is exact.
      return space_->full_to_m(space_->algebra().bracket(v, space_->m_to_full(y)));
    }
    case FieldKind::components: {
      MVector out(space_->q());
      for (int i = 0; i < space_->q(); ++i) {
        out[i] = dsl::eval(exprs_[static_cast<std::size_t>(i)], y);
      }
      return out;
    }
  }
  throw InvalidInputError("eval: corrupt field kind");
}

PropertyCertificate SprayField::check_homogeneity(const SampleOptions& opts) const {
  PropertyCertificate cert;
  cert.check = "homogeneity";
  cert.seed = opts.seed;
  cert.samples = opts.samples;
  cert.tolerance = 1e-9;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote};
  if (opts.samples < 1) throw InvalidInputError("check_homogeneity: samples must be >= 1");

  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    const MVector y = rng.unit_sphere(space_->q());
    try {
      const MVector eta_y = eval(y);
      for (double lambda : opts.lambdas) {
        const MVector eta_scaled = eval(lambda * y);
        const double residual =
            (eta_scaled - lambda * lambda * eta_y).norm() / (lambda * lambda);
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

PropertyCertificate SprayField::check_equivariance(const SampleOptions& opts) const {
  PropertyCertificate cert;
  cert.check = "equivariance";
  cert.seed = opts.seed;
  cert.samples = opts.samples;
  cert.tolerance = 1e-8;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote,
                "group elements drawn from the identity component of H via exponential "
                "coordinates in [-pi, pi]^|h|"};
  if (opts.samples < 1) throw InvalidInputError("check_equivariance: samples must be >= 1");

  if (space_->h_dim() == 0) {
    cert.status = CheckStatus::pass;
    cert.notes.push_back("h is empty: equivariance holds vacuously");
    return cert;
  }

  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    const MVector y = rng.unit_sphere(space_->q());
    for (int g = 0; g < opts.group_samples; ++g) {
      const Eigen::VectorXd t = rng.box(space_->h_dim(), -M_PI, M_PI);
      const Eigen::MatrixXd ad_g = space_->adjoint_h_on_m(t);
      try {
        const double residual = (eval(ad_g * y) - ad_g * eval(y)).norm();
        cert.max_residual = std::max(cert.max_residual, residual);
      } catch (const DomainError& err) {
        cert.sample_errors.push_back(err.what());
      }
    }
  }
  if (!cert.sample_errors.empty()) {
    cert.status = CheckStatus::inconclusive;
  } else {
    cert.status = cert.max_residual <= cert.tolerance ? CheckStatus::pass : CheckStatus::fail;
  }
  return cert;
}

PropertyCertificate SprayField::check_evenness(const SampleOptions& opts) const {
  PropertyCertificate cert;
  cert.check = "evenness";
  cert.seed = opts.seed;
  cert.samples = opts.samples;
  cert.tolerance = 1e-10;
  cert.notes = {kSampledEvidenceNote, kSmoothnessNote};
  if (opts.samples < 1) throw InvalidInputError("check_evenness: samples must be >= 1");

  Rng rng(opts.seed);
  for (int s = 0; s < opts.samples; ++s) {
    const MVector y = rng.unit_sphere(space_->q());
    try {
      const double residual = (eval(y) - eval(-y)).norm();
      cert.max_residual = std::max(cert.max_residual, residual);
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
