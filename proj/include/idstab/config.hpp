#pragma once

#include <string>

#include <json.hpp>

#include "idstab/encirclement.hpp"
#include "idstab/kernel_model.hpp"

namespace idstab {

enum class OutputFormat { Text, Structured };

struct RunConfig {
  RawBounds system;
  int grid_points = 4096;
  RootOptions roots;
  CountOptions count;
  bool cluster = true;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;

  AnalysisOptions analysis_options() const;
};

// Parses the JSON system description. Top-level keys: system {n, n0, h, N,
// b_upper, b_lower, tau_bar?}, tolerances {tol_circle, tol_cluster,
// tol_coeff, tol_v}, grid_points, cluster, seed. Coefficients are nested
// [row][col][knot]. Unknown keys are rejected (ParseError); value
// validation is deferred to validate().
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json serialize_config(const RunConfig& cfg);

}  // namespace idstab
