#include "spraylab/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>

#include "spraylab/errors.hpp"

namespace spraylab {

std::string ConfigError::join(const std::vector<std::string>& v) {
  std::string out = "config validation failed:";
  for (const auto& s : v) out += "\n  - " + s;
  return out;
}

ChartMap sphere_thetaphi_map() {
  ChartMap map;
  map.name = "sphere_thetaphi";
  map.periodic = {false, true};
  map.position = [](const Eigen::VectorXd& p) {
    Eigen::VectorXd x(2);
    x[0] = std::acos(std::clamp(p[2] / p.norm(), -1.0, 1.0));
    x[1] = std::atan2(p[1], p[0]);
    return x;
  };
  map.velocity = [](const Eigen::VectorXd& p, const Eigen::VectorXd& v) {
    const double rxy2 = p[0] * p[0] + p[1] * p[1];
    Eigen::VectorXd y(2);
    y[0] = -v[2] / std::sqrt(rxy2);
    y[1] = (p[0] * v[1] - p[1] * v[0]) / rxy2;
    return y;
  };
  map.valid = [](const Eigen::VectorXd& p) {
    return std::sqrt(p[0] * p[0] + p[1] * p[1]) > 0.05 * p.norm();
  };
  return map;
}

ChartMap find_chart_map(const std::string& name) {
  if (name == "sphere_thetaphi") return sphere_thetaphi_map();
  throw InvalidInputError("unknown chart map '" + name + "'");
}

namespace {

class Validator {
public:
  explicit Validator(const nlohmann::json& config) : config_(config) {}

  LoadedModel run() {
    LoadedModel model;
    model.name = config_.value("name", "");
    model.description = config_.value("description", "");

    auto algebra = load_algebra();
    auto rep = load_representation(algebra ? algebra->dim() : 0);
    load_decomposition(algebra ? algebra->dim() : 0);
    if (algebra && rep && violations_.empty()) {
      try {
        auto space = std::make_shared<ReductiveSpace>(*algebra, *rep, h_indices_, m_indices_);
        validate_space(*space);
        model.space = space;
      } catch (const InvalidInputError& err) {
        add(std::string("decomposition: ") + err.what());
      }
    }
    if (model.space) {
      model.field = load_eta(model.space);
    }
    load_chart(model);
    load_numerics(model.numerics);

    if (!violations_.empty()) throw ConfigError(std::move(violations_));
    if (!model.space) {
      throw ConfigError({"config produced no usable space (missing sections)"});
    }
    return model;
  }

private:
  void add(std::string v) { violations_.push_back(std::move(v)); }

  bool require_section(const char* key) {
    if (!config_.contains(key)) {
      add(std::string(key) + ": missing section");
      return false;
    }
    if (!config_[key].is_object()) {
      add(std::string(key) + ": must be an object");
      return false;
    }
    return true;
  }

  std::optional<LieAlgebra> load_algebra() {
    if (!require_section("algebra")) return std::nullopt;
    const auto& section = config_["algebra"];
    if (!section.contains("dim") || !section["dim"].is_number_integer() ||
        section["dim"].get<int>() <= 0) {
      add("algebra.dim: positive integer required");
      return std::nullopt;
    }
    const int n = section["dim"].get<int>();
    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<double> tensor(nn * nn * nn, 0.0);
    std::set<std::array<int, 3>> specified;
    if (section.contains("structure_constants")) {
      if (!section["structure_constants"].is_array()) {
        add("algebra.structure_constants: array of [i, j, k, value] entries required");
        return std::nullopt;
      }
      std::size_t entry_index = 0;
      for (const auto& entry : section["structure_constants"]) {
        const std::string where =
            "algebra.structure_constants[" + std::to_string(entry_index++) + "]";
        if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number_integer() ||
            !entry[3].is_number()) {
          add(where + ": expected [i, j, k, value] with 1-based integer indices");
          continue;
        }
        const int i = entry[0].get<int>(), j = entry[1].get<int>(), k = entry[2].get<int>();
        const double value = entry[3].get<double>();
        if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n) {
          add(where + ": index out of range 1.." + std::to_string(n));
          continue;
        }
        if (!specified.insert({i, j, k}).second) {
          add(where + ": duplicate entry for (" + std::to_string(i) + "," +
              std::to_string(j) + "," + std::to_string(k) + ")");
          continue;
        }
        tensor[(static_cast<std::size_t>(i - 1) * nn + static_cast<std::size_t>(j - 1)) * nn +
               static_cast<std::size_t>(k - 1)] = value;
      }
      // Antisymmetric completion of unspecified mirror entries.
      for (const auto& [i, j, k] : specified) {
        if (!specified.count({j, i, k})) {
          tensor[(static_cast<std::size_t>(j - 1) * nn + static_cast<std::size_t>(i - 1)) * nn +
                 static_cast<std::size_t>(k - 1)] =
              -tensor[(static_cast<std::size_t>(i - 1) * nn +
                       static_cast<std::size_t>(j - 1)) * nn +
                      static_cast<std::size_t>(k - 1)];
        }
      }
    }
    std::vector<std::string> labels;
    if (section.contains("basis_labels")) {
      for (const auto& l : section["basis_labels"]) labels.push_back(l.get<std::string>());
      if (static_cast<int>(labels.size()) != n) {
        add("algebra.basis_labels: one label per basis vector required");
        labels.clear();
      }
    }
    try {
      LieAlgebra algebra(n, tensor, labels);
      const AlgebraCheck check = algebra.validate();
      if (check.antisymmetry_residual > 1e-12) {
        add("algebra: antisymmetry violated, residual " +
            std::to_string(check.antisymmetry_residual));
      }
      if (check.jacobi_residual > 1e-12) {
        add("algebra: Jacobi identity violated, residual " +
            std::to_string(check.jacobi_residual));
      }
      return algebra;
    } catch (const InvalidInputError& err) {
      add(std::string("algebra: ") + err.what());
      return std::nullopt;
    }
  }

  static std::optional<Eigen::MatrixXd> matrix_from_json(const nlohmann::json& entry,
                                                         int rows, int cols) {
    if (!entry.is_array()) return std::nullopt;
    Eigen::MatrixXd m(rows, cols);
    if (!entry.empty() && entry[0].is_array()) {  // nested rows
      if (static_cast<int>(entry.size()) != rows) return std::nullopt;
      for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(entry[static_cast<std::size_t>(r)].size()) != cols) {
          return std::nullopt;
        }
        for (int c = 0; c < cols; ++c) {
          const auto& v = entry[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          if (!v.is_number()) return std::nullopt;
          m(r, c) = v.get<double>();
        }
      }
      return m;
    }
    if (static_cast<int>(entry.size()) != rows * cols) return std::nullopt;
    for (int r = 0; r < rows; ++r) {  // flat row-major
      for (int c = 0; c < cols; ++c) {
        const auto& v = entry[static_cast<std::size_t>(r * cols + c)];
        if (!v.is_number()) return std::nullopt;
        m(r, c) = v.get<double>();
      }
    }
    return m;
  }

  std::optional<MatrixRep> load_representation(int algebra_dim) {
    if (!require_section("representation")) return std::nullopt;
    const auto& section = config_["representation"];
    if (!section.contains("size") || !section["size"].is_number_integer() ||
        section["size"].get<int>() <= 0) {
      add("representation.size: positive integer required");
      return std::nullopt;
    }
    const int size = section["size"].get<int>();
    if (!section.contains("generators") || !section["generators"].is_array()) {
      add("representation.generators: array required");
      return std::nullopt;
    }
    if (algebra_dim > 0 &&
        static_cast<int>(section["generators"].size()) != algebra_dim) {
      add("representation.generators: expected " + std::to_string(algebra_dim) +
          " generators, got " + std::to_string(section["generators"].size()));
      return std::nullopt;
    }
    std::vector<Eigen::MatrixXd> generators;
    std::size_t index = 0;
    for (const auto& g : section["generators"]) {
      auto m = matrix_from_json(g, size, size);
      if (!m) {
        add("representation.generators[" + std::to_string(index) +
            "]: expected a row-major " + std::to_string(size) + "x" + std::to_string(size) +
            " matrix");
        return std::nullopt;
      }
      generators.push_back(std::move(*m));
      ++index;
    }
    if (!section.contains("base_point") || !section["base_point"].is_array()) {
      add("representation.base_point: array required");
      return std::nullopt;
    }
    const std::size_t len = section["base_point"].size();
    std::optional<Eigen::MatrixXd> base;
    if (len == static_cast<std::size_t>(size)) {
      base = matrix_from_json(section["base_point"], size, 1);
    } else if (len == static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {
      base = matrix_from_json(section["base_point"], size, size);
    }
    if (!base) {
      add("representation.base_point: expected an N-vector or a row-major N x N matrix");
      return std::nullopt;
    }
    try {
      return MatrixRep(std::move(generators), std::move(*base));
    } catch (const InvalidInputError& err) {
      add(std::string("representation: ") + err.what());
      return std::nullopt;
    }
  }

  void load_decomposition(int algebra_dim) {
    if (!require_section("decomposition")) return;
    const auto& section = config_["decomposition"];
    auto read_indices = [&](const char* key, std::vector<int>& out) {
      if (!section.contains(key) || !section[key].is_array()) {
        add(std::string("decomposition.") + key + ": array of 1-based indices required");
        return;
      }
      for (const auto& v : section[key]) {
        if (!v.is_number_integer()) {
          add(std::string("decomposition.") + key + ": indices must be integers");
          return;
        }
        const int i = v.get<int>();
        if (i < 1 || (algebra_dim > 0 && i > algebra_dim)) {
          add(std::string("decomposition.") + key + ": index " + std::to_string(i) +
              " out of range 1.." + std::to_string(algebra_dim));
          return;
        }
        out.push_back(i - 1);
      }
    };
    read_indices("h_indices", h_indices_);
    read_indices("m_indices", m_indices_);
  }

  void validate_space(const ReductiveSpace& space) {
    const double rep_residual = space.rep().representation_residual(space.algebra());
    if (rep_residual > 1e-10) {
      add("representation: bracket relations violated, residual " +
          std::to_string(rep_residual));
    }
    const double stabilizer = space.stabilizer_residual();
    if (stabilizer > 1e-10) {
      add("representation: h-exponentials do not fix the base point, residual " +
          std::to_string(stabilizer));
    }
    const DecompositionCertificate cert = space.validate_decomposition();
    if (!cert.pass) {
      add("decomposition: invariance checks failed ([h,h] residual " +
          std::to_string(cert.subalgebra_residual) + ", [h,m] residual " +
          std::to_string(cert.reductive_residual) + ")");
    }
  }

  std::optional<SprayField> load_eta(std::shared_ptr<const ReductiveSpace> space) {
    if (!config_.contains("eta")) {
      return SprayField::zero(std::move(space));  // default: canonical field
    }
    if (!config_["eta"].is_object()) {
      add("eta: must be an object");
      return std::nullopt;
    }
    const auto& section = config_["eta"];
    const std::string kind = section.value("kind", "");
    auto parse_list = [&](const char* key, int expected,
                          std::vector<dsl::Expr>& out) -> bool {
      if (!section.contains(key) || !section[key].is_array()) {
        add(std::string("eta.") + key + ": array of expression strings required");
        return false;
      }
      if (static_cast<int>(section[key].size()) != expected) {
        add(std::string("eta.") + key + ": expected " + std::to_string(expected) +
            " expressions, got " + std::to_string(section[key].size()));
        return false;
      }
      bool ok = true;
      std::size_t index = 0;
      for (const auto& s : section[key]) {
        const std::string where = std::string("eta.") + key + "[" + std::to_string(index++) + "]";
        if (!s.is_string()) {
          add(where + ": expected a string");
          ok = false;
          continue;
        }
        try {
          out.push_back(dsl::parse(s.get<std::string>(), space->q()));
        } catch (const ParseError& err) {
          add(where + ": " + err.what());
          ok = false;
        }
      }
      return ok;
    };

    if (kind == "zero") return SprayField::zero(std::move(space));
    if (kind == "bracket_form") {
      std::vector<dsl::Expr> coefficients;
      if (!parse_list("coefficients", space->h_dim(), coefficients)) return std::nullopt;
      return SprayField::bracket_form(std::move(space), std::move(coefficients));
    }
    if (kind == "components") {
      std::vector<dsl::Expr> components;
      if (!parse_list("components", space->q(), components)) return std::nullopt;
      return SprayField::components(std::move(space), std::move(components));
    }
    add("eta.kind: expected \"zero\", \"bracket_form\" or \"components\"");
    return std::nullopt;
  }

  void load_chart(LoadedModel& model) {
    if (!config_.contains("chart")) return;
    if (!config_["chart"].is_object()) {
      add("chart: must be an object");
      return;
    }
    const auto& section = config_["chart"];
    if (!section.contains("dim") || !section["dim"].is_number_integer() ||
        section["dim"].get<int>() <= 0) {
      add("chart.dim: positive integer required");
      return;
    }
    const int d = section["dim"].get<int>();
    if (!section.contains("coefficients") || !section["coefficients"].is_array() ||
        static_cast<int>(section["coefficients"].size()) != d) {
      add("chart.coefficients: expected " + std::to_string(d) + " expression strings");
      return;
    }
    std::vector<dsl::Expr> coefficients;
    std::size_t index = 0;
    for (const auto& s : section["coefficients"]) {
      const std::string where = "chart.coefficients[" + std::to_string(index++) + "]";
      if (!s.is_string()) {
        add(where + ": expected a string");
        return;
      }
      try {
        coefficients.push_back(dsl::parse_chart(s.get<std::string>(), d));
      } catch (const ParseError& err) {
        add(where + ": " + err.what());
        return;
      }
    }
    model.chart.emplace(d, std::move(coefficients));

    model.chart_x_box.assign(static_cast<std::size_t>(d), {-1.0, 1.0});
    if (section.contains("x_box")) {
      const auto& box = section["x_box"];
      if (!box.is_array() || static_cast<int>(box.size()) != d) {
        add("chart.x_box: expected " + std::to_string(d) + " [lo, hi] pairs");
        return;
      }
      for (int i = 0; i < d; ++i) {
        const auto& pair = box[static_cast<std::size_t>(i)];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number() || !(pair[0].get<double>() < pair[1].get<double>())) {
          add("chart.x_box[" + std::to_string(i) + "]: expected [lo, hi] with lo < hi");
          return;
        }
        model.chart_x_box[static_cast<std::size_t>(i)] = {pair[0].get<double>(),
                                                          pair[1].get<double>()};
      }
    }
    if (section.contains("point_map")) {
      if (!section["point_map"].is_string()) {
        add("chart.point_map: expected a chart map name");
        return;
      }
      try {
        model.chart_map = find_chart_map(section["point_map"].get<std::string>());
      } catch (const InvalidInputError& err) {
        add(std::string("chart.point_map: ") + err.what());
      }
    }
  }

  void load_numerics(Numerics& numerics) {
    if (!config_.contains("numerics")) return;
    if (!config_["numerics"].is_object()) {
      add("numerics: must be an object");
      return;
    }
    const auto& section = config_["numerics"];
    if (section.contains("step")) {
      numerics.step = section["step"].get<double>();
      if (!(numerics.step > 0.0)) add("numerics.step: must be positive");
    }
    if (section.contains("t_span")) {
      const auto& span = section["t_span"];
      if (!span.is_array() || span.size() != 2 || !span[0].is_number() ||
          !span[1].is_number()) {
        add("numerics.t_span: expected [t0, t1]");
      } else {
        numerics.t0 = span[0].get<double>();
        numerics.t1 = span[1].get<double>();
      }
    }
    if (section.contains("samples")) {
      numerics.samples = section["samples"].get<int>();
      if (numerics.samples < 1) add("numerics.samples: must be >= 1");
    }
    if (section.contains("seed")) numerics.seed = section["seed"].get<std::uint64_t>();
    if (section.contains("restarts")) {
      numerics.restarts = section["restarts"].get<int>();
      if (numerics.restarts < 1) add("numerics.restarts: must be >= 1");
    }
    if (section.contains("iterations")) {
      numerics.iterations = section["iterations"].get<int>();
      if (numerics.iterations < 1) add("numerics.iterations: must be >= 1");
    }
    if (section.contains("group_samples")) {
      numerics.group_samples = section["group_samples"].get<int>();
      if (numerics.group_samples < 1) add("numerics.group_samples: must be >= 1");
    }
    if (section.contains("lambdas")) {
      numerics.lambdas.clear();
      for (const auto& l : section["lambdas"]) {
        const double v = l.get<double>();
        if (!(v > 0.0)) {
          add("numerics.lambdas: scalings must be positive");
          break;
        }
        numerics.lambdas.push_back(v);
      }
      if (numerics.lambdas.empty()) add("numerics.lambdas: at least one scaling required");
    }
  }

  const nlohmann::json& config_;
  std::vector<std::string> violations_;
  std::vector<int> h_indices_;
  std::vector<int> m_indices_;
};

}  // namespace

LoadedModel load_config_json(const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError({"top level: JSON object required"});
  return Validator(config).run();
}

LoadedModel load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError({std::string("JSON parse error: ") + err.what()});
  }
  return load_config_json(config);
}

}  // namespace spraylab
