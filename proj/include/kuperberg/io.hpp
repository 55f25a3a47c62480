#pragma once

#include <string>

#include <json.hpp>

#include "kuperberg/params.hpp"

namespace kup {

inline constexpr const char* config_env = "KUPERBERG_CONFIG";

// overlays the keys of j onto p; unknown keys are rejected
plug_params params_from_json(const nlohmann::json& j, plug_params p = {});
plug_params load_params(const std::string& path, plug_params p = {});

// 17 significant digits, '.' decimal point
std::string fmt17(double x);

}  // namespace kup
