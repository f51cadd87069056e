#include "idstab/config.hpp"

#include <cmath>
#include <fstream>

namespace idstab {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        ok = true;
        break;
      }
    if (!ok)
      fail(ErrorCode::ParseError,
           "unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key))
    fail(ErrorCode::ParseError,
         "missing key '" + std::string(key) + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "key '" + std::string(key) + "' in " + where +
                                    ": " + e.what());
  }
}

std::vector<std::vector<std::vector<double>>> coeff_tensor(
    const json& j, const char* key, const std::string& where) {
  try {
    return require<std::vector<std::vector<std::vector<double>>>>(j, key,
                                                                  where);
  } catch (const Error&) {
    throw;
  }
}

}  // namespace

AnalysisOptions RunConfig::analysis_options() const {
  AnalysisOptions opts;
  opts.grid_points = grid_points;
  opts.roots = roots;
  opts.roots.cluster = cluster;
  opts.count = count;
  return opts;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "config must be an object");
  reject_unknown_keys(
      j, {"system", "tolerances", "grid_points", "cluster", "seed"}, "config");

  RunConfig cfg;
  if (!j.contains("system"))
    fail(ErrorCode::ParseError, "missing key 'system' in config");
  const json& sys = j.at("system");
  reject_unknown_keys(sys, {"n", "n0", "h", "N", "b_upper", "b_lower", "tau_bar"},
                      "system");
  cfg.system.n = require<int>(sys, "n", "system");
  cfg.system.n0 = require<int>(sys, "n0", "system");
  cfg.system.h = require<double>(sys, "h", "system");
  cfg.system.N = require<int>(sys, "N", "system");
  cfg.system.b_upper = coeff_tensor(sys, "b_upper", "system");
  cfg.system.b_lower = coeff_tensor(sys, "b_lower", "system");
  if (sys.contains("tau_bar")) {
    const double tau_bar = sys.at("tau_bar").get<double>();
    const double derived = cfg.system.N * cfg.system.h;
    if (std::abs(tau_bar - derived) > 1e-12 * std::max(1.0, std::abs(derived)))
      fail(ErrorCode::ParseError,
           "tau_bar = " + std::to_string(tau_bar) +
               " is inconsistent with N * h = " + std::to_string(derived));
  }

  if (j.contains("tolerances")) {
    const json& tol = j.at("tolerances");
    reject_unknown_keys(tol, {"tol_circle", "tol_cluster", "tol_coeff", "tol_v"},
                        "tolerances");
    if (tol.contains("tol_circle"))
      cfg.roots.tol_circle = tol.at("tol_circle").get<double>();
    if (tol.contains("tol_cluster"))
      cfg.roots.tol_cluster = tol.at("tol_cluster").get<double>();
    if (tol.contains("tol_coeff"))
      cfg.roots.tol_coeff = tol.at("tol_coeff").get<double>();
    if (tol.contains("tol_v")) cfg.count.tol_v = tol.at("tol_v").get<double>();
    for (double t : {cfg.roots.tol_circle, cfg.roots.tol_cluster,
                     cfg.roots.tol_coeff, cfg.count.tol_v})
      if (!(t > 0.0))
        fail(ErrorCode::ParseError, "tolerances must be positive");
  }
  if (j.contains("grid_points")) {
    cfg.grid_points = j.at("grid_points").get<int>();
    if (cfg.grid_points < 64)
      fail(ErrorCode::ParseError, "grid_points must be >= 64");
  }
  if (j.contains("cluster")) cfg.cluster = j.at("cluster").get<bool>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json serialize_config(const RunConfig& cfg) {
  json j;
  j["system"] = {{"n", cfg.system.n},
                 {"n0", cfg.system.n0},
                 {"h", cfg.system.h},
                 {"N", cfg.system.N},
                 {"b_upper", cfg.system.b_upper},
                 {"b_lower", cfg.system.b_lower}};
  j["tolerances"] = {{"tol_circle", cfg.roots.tol_circle},
                     {"tol_cluster", cfg.roots.tol_cluster},
                     {"tol_coeff", cfg.roots.tol_coeff},
                     {"tol_v", cfg.count.tol_v}};
  j["grid_points"] = cfg.grid_points;
  j["cluster"] = cfg.cluster;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace idstab
