#include "mirrorvis/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "mirrorvis/errors.hpp"

namespace mirrorvis {
namespace {

using nlohmann::json;

double number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(key, "missing required key \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(key, "key \"" + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(key, "unknown key \"" + key + "\"");
  }
}

}  // namespace

ParamsConfig parse_params_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  if (!j.contains("mode") || !j.at("mode").is_string()) {
    throw ConfigError("mode", "key \"mode\" must be \"physical\" or \"dimensionless\"");
  }

  ParamsConfig cfg;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "physical") {
    reject_unknown(j, {"mode", "M_kg", "omega_m_rad_s", "omega_c_rad_s", "L_m", "T_K",
                       "gamma_per_s", "lambda_qq", "Lambda_nonenv"});
    cfg.mode = InputMode::physical;
    auto& p = cfg.physical;
    p.M = number(j, "M_kg");
    p.omega_m = number(j, "omega_m_rad_s");
    p.omega_c = number(j, "omega_c_rad_s");
    p.L = number(j, "L_m");
    p.T = number(j, "T_K");
    p.gamma = number(j, "gamma_per_s");
    p.lambda_qq = number_or(j, "lambda_qq", 0.0);
    p.Lambda_nonenv = number_or(j, "Lambda_nonenv", 0.0);
  } else if (mode == "dimensionless") {
    reject_unknown(j, {"mode", "kappa", "Lambda", "chi", "inv_Q", "n_bar"});
    cfg.mode = InputMode::dimensionless;
    cfg.kappa = number(j, "kappa");
    cfg.Lambda = number(j, "Lambda");
    cfg.chi = number(j, "chi");
    cfg.inv_Q = number(j, "inv_Q");
    cfg.n_bar = number(j, "n_bar");
  } else {
    throw ConfigError("mode", "key \"mode\" must be \"physical\" or \"dimensionless\"");
  }
  return cfg;
}

ParamsConfig load_params_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_params_config(text.str());
}

std::string canonical_json(const ParamsConfig& cfg) {
  json j;
  if (cfg.mode == InputMode::physical) {
    const auto& p = cfg.physical;
    j = {{"mode", "physical"},      {"M_kg", p.M},          {"omega_m_rad_s", p.omega_m},
         {"omega_c_rad_s", p.omega_c}, {"L_m", p.L},        {"T_K", p.T},
         {"gamma_per_s", p.gamma},  {"lambda_qq", p.lambda_qq}, {"Lambda_nonenv", p.Lambda_nonenv}};
  } else {
    j = {{"mode", "dimensionless"}, {"kappa", cfg.kappa}, {"Lambda", cfg.Lambda},
         {"chi", cfg.chi},          {"inv_Q", cfg.inv_Q}, {"n_bar", cfg.n_bar}};
  }
  return j.dump();
}

DimensionlessParams resolve(const ParamsConfig& cfg, const PhysConstants& c) {
  if (cfg.mode == InputMode::physical) return derive_dimensionless(cfg.physical, c);
  return make_dimensionless(cfg.kappa, cfg.Lambda, cfg.chi, cfg.inv_Q, cfg.n_bar);
}

}  // namespace mirrorvis
