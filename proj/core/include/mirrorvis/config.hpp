#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mirrorvis/params.hpp"

namespace mirrorvis {

enum class InputMode { physical, dimensionless };

/// Parsed parameter file. Physical mode keys:
///   mode, M_kg, omega_m_rad_s, omega_c_rad_s, L_m, T_K, gamma_per_s,
///   lambda_qq (default 0), Lambda_nonenv (default 0)
/// Dimensionless mode keys:
///   mode, kappa, Lambda, chi, inv_Q, n_bar
/// Any other key is rejected.
struct ParamsConfig {
  InputMode mode = InputMode::physical;
  PhysicalParams physical;
  double kappa = 0.0;
  double Lambda = 0.0;
  double chi = 0.0;
  double inv_Q = 0.0;
  double n_bar = 0.0;
};

/// Throws ConfigError naming the offending key.
ParamsConfig parse_params_config(std::string_view json_text);
ParamsConfig load_params_config(const std::filesystem::path& path);

/// Compact JSON with sorted keys, suitable for echoing into outputs.
std::string canonical_json(const ParamsConfig& cfg);

DimensionlessParams resolve(const ParamsConfig& cfg, const PhysConstants& c = {});

}  // namespace mirrorvis
