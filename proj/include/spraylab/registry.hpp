#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace spraylab {

struct ExampleEntry {
  std::string name;
  std::string description;
  nlohmann::json config;
};

/// Built-in example configs covering every classifier branch and both oracle
/// routes (closed-form homogeneous geodesics and a coordinate chart).
const std::vector<ExampleEntry>& example_registry();

/// Config of a registry entry by name; throws InvalidInputError.
const nlohmann::json& example_config(const std::string& name);

}  // namespace spraylab
