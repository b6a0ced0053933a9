#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spraylab/local_spray.hpp"
#include "spraylab/reductive.hpp"
#include "spraylab/spray_field.hpp"

namespace spraylab {

/// Config loading failure carrying every violation found, not just the first.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

private:
  static std::string join(const std::vector<std::string>& v);
  std::vector<std::string> violations_;
};

struct Numerics {
  double step = 1e-3;
  double t0 = 0.0;
  double t1 = 2.0;
  int samples = 200;
  std::uint64_t seed = kDefaultSeed;
  int restarts = 16;
  int iterations = 100;
  int group_samples = 8;
  std::vector<double> lambdas = {0.5, 2.0, 3.0};
};

/// Bridge from model points in the representation to chart coordinates.
/// Charts are example-specific, so maps are built-in and named.
struct ChartMap {
  std::string name;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> position;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> velocity;
  std::function<bool(const Eigen::VectorXd&)> valid;
  std::vector<bool> periodic;  // compare these chart coordinates modulo 2*pi
};

/// Unit-sphere model in R^3 with polar angle x1 = theta from the +z axis and
/// azimuth x2 = phi; undefined near the poles.
ChartMap sphere_thetaphi_map();

/// Looks up a built-in chart map by name; throws InvalidInputError.
ChartMap find_chart_map(const std::string& name);

struct LoadedModel {
  std::string name;
  std::string description;
  std::shared_ptr<const ReductiveSpace> space;
  std::optional<SprayField> field;
  std::optional<LocalSpray> chart;
  std::optional<ChartMap> chart_map;
  std::vector<std::pair<double, double>> chart_x_box;
  Numerics numerics;
};

/// Parses and fully validates a config. Structure constants use 1-based
/// [i, j, k, value] entries; unspecified entries default to zero with
/// antisymmetric completion. Throws ConfigError listing all violations.
LoadedModel load_config_json(const nlohmann::json& config);

/// File variant; parse errors carry the location reported by the JSON parser.
LoadedModel load_config(const std::string& path);

}  // namespace spraylab
