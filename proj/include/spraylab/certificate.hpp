#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spraylab {

enum class CheckStatus { pass, fail, inconclusive };

std::string to_string(CheckStatus s);

/// Sampled-evidence record for a property check. Never a proof: it carries
/// the seed, the sample count and the worst residual seen.
struct PropertyCertificate {
  std::string check;
  CheckStatus status = CheckStatus::inconclusive;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::vector<std::string> notes;
  std::vector<std::string> sample_errors;

  bool passed() const { return status == CheckStatus::pass; }
};

nlohmann::json to_json(const PropertyCertificate& cert);

/// Notes stamped on every sampled certificate.
inline const char* kSampledEvidenceNote =
    "sampled evidence only, not a proof: residuals are maxima over the drawn samples";
inline const char* kSmoothnessNote =
    "smoothness of the field is not checked; expressions may be nonsmooth on "
    "measure-zero sets (abs)";

}  // namespace spraylab
