#include "spraylab/registry.hpp"

#include <Eigen/Dense>
#include <complex>

#include "spraylab/errors.hpp"

namespace spraylab {

namespace {

nlohmann::json flat_row_major(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

// a + bi -> [[a, -b], [b, a]] blockwise; a faithful real form of a complex
// representation.
Eigen::MatrixXd realify(const Eigen::Matrix2cd& m) {
  Eigen::MatrixXd out(4, 4);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const std::complex<double> z = m(r, c);
      out(2 * r, 2 * c) = z.real();
      out(2 * r, 2 * c + 1) = -z.imag();
      out(2 * r + 1, 2 * c) = z.imag();
      out(2 * r + 1, 2 * c + 1) = z.real();
    }
  }
  return out;
}

nlohmann::json so3_generators() {
  Eigen::Matrix3d l1, l2, l3;
  l1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  l2 << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  l3 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return nlohmann::json::array({flat_row_major(l1), flat_row_major(l2), flat_row_major(l3)});
}

nlohmann::json su2_generators() {
  using namespace std::complex_literals;
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -1i, 1i, 0;
  s3 << 1, 0, 0, -1;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& sigma : {s1, s2, s3}) {
    out.push_back(flat_row_major(realify(-0.5i * sigma)));
  }
  return out;
}

// [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2 (shared by so(3) and su(2)).
nlohmann::json cyclic_structure_constants() {
  return nlohmann::json::array({nlohmann::json::array({1, 2, 3, 1.0}),
                                nlohmann::json::array({2, 3, 1, 1.0}),
                                nlohmann::json::array({3, 1, 2, 1.0})});
}

nlohmann::json default_numerics() {
  return nlohmann::json{{"step", 1e-3},
                        {"t_span", nlohmann::json::array({0.0, 2.0})},
                        {"samples", 200},
                        {"seed", 42}};
}

nlohmann::json so3_sphere_base(const char* name, const char* description) {
  return nlohmann::json{
      {"name", name},
      {"description", description},
      {"algebra", {{"dim", 3}, {"structure_constants", cyclic_structure_constants()}}},
      {"representation",
       {{"size", 3},
        {"generators", so3_generators()},
        {"base_point", nlohmann::json::array({0.0, 0.0, 1.0})}}},
      {"decomposition",
       {{"h_indices", nlohmann::json::array({3})},
        {"m_indices", nlohmann::json::array({1, 2})}}},
      {"numerics", default_numerics()}};
}

std::vector<ExampleEntry> build_registry() {
  std::vector<ExampleEntry> registry;

  {
    nlohmann::json config{
        {"name", "so3_group"},
        {"description",
         "SO(3) acting on itself (trivial stabilizer) with the vanishing field: "
         "geodesic orbit, but the algebraic reversal condition fails everywhere"},
        {"algebra", {{"dim", 3}, {"structure_constants", cyclic_structure_constants()}}},
        {"representation",
         {{"size", 3},
          {"generators", so3_generators()},
          {"base_point", flat_row_major(Eigen::Matrix3d::Identity())}}},
        {"decomposition",
         {{"h_indices", nlohmann::json::array()},
          {"m_indices", nlohmann::json::array({1, 2, 3})}}},
        {"eta", {{"kind", "zero"}}},
        {"numerics", default_numerics()}};
    registry.push_back({"so3_group", config["description"], config});
  }

  {
    nlohmann::json config = so3_sphere_base(
        "so3_sphere_zero_eta",
        "the round 2-sphere SO(3)/SO(2) with the vanishing field: weakly symmetric "
        "and geodesic orbit");
    config["eta"] = {{"kind", "zero"}};
    registry.push_back({"so3_sphere_zero_eta", config["description"], config});
  }

  {
    nlohmann::json config = so3_sphere_base(
        "so3_sphere_radial_eta",
        "SO(3)/SO(2) with the radial field norm(y)*y: equivariant and 2-homogeneous "
        "but neither geodesic orbit nor even");
    config["eta"] = {{"kind", "components"},
                     {"components", nlohmann::json::array({"norm()*y1", "norm()*y2"})}};
    registry.push_back({"so3_sphere_radial_eta", config["description"], config});
  }

  {
    nlohmann::json config = so3_sphere_base(
        "so3_sphere_tangential_eta",
        "SO(3)/SO(2) with the tangential field norm(y)*[e3, y]: geodesic orbit with "
        "witness norm(y0)*e3, not even");
    config["eta"] = {{"kind", "bracket_form"},
                     {"coefficients", nlohmann::json::array({"norm()"})}};
    registry.push_back({"so3_sphere_tangential_eta", config["description"], config});
  }

  {
    nlohmann::json config{
        {"name", "su2_group"},
        {"description",
         "SU(2) acting on itself in the realified defining representation; exercises "
         "the matrix-exponential oracle on 4x4 blocks"},
        {"algebra", {{"dim", 3}, {"structure_constants", cyclic_structure_constants()}}},
        {"representation",
         {{"size", 4},
          {"generators", su2_generators()},
          {"base_point", flat_row_major(Eigen::MatrixXd::Identity(4, 4))}}},
        {"decomposition",
         {{"h_indices", nlohmann::json::array()},
          {"m_indices", nlohmann::json::array({1, 2, 3})}}},
        {"eta", {{"kind", "zero"}}},
        {"numerics", default_numerics()}};
    registry.push_back({"su2_group", config["description"], config});
  }

  {
    nlohmann::json config = so3_sphere_base(
        "sphere_chart",
        "SO(3)/SO(2) with the vanishing field plus the polar chart (theta, phi) of "
        "the round sphere for coordinate cross-checks");
    config["eta"] = {{"kind", "zero"}};
    config["chart"] = {
        {"dim", 2},
        {"coefficients",
         nlohmann::json::array(
             {"-0.5*sin(x1)*cos(x1)*y2^2", "cos(x1)/sin(x1)*y1*y2"})},
        {"x_box", nlohmann::json::array({nlohmann::json::array({0.4, 2.7}),
                                         nlohmann::json::array({-3.1, 3.1})})},
        {"point_map", "sphere_thetaphi"}};
    registry.push_back({"sphere_chart", config["description"], config});
  }

  return registry;
}

}  // namespace

const std::vector<ExampleEntry>& example_registry() {
  static const std::vector<ExampleEntry> registry = build_registry();
  return registry;
}

const nlohmann::json& example_config(const std::string& name) {
  for (const auto& entry : example_registry()) {
    if (entry.name == name) return entry.config;
  }
  throw InvalidInputError("unknown example '" + name + "'");
}

}  // namespace spraylab
