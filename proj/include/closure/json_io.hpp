#pragma once

#include <json.hpp>

#include <string>

#include "closure/purse.hpp"

namespace closure {

using Json = nlohmann::json;

Json pose_to_json(const Pose& pose);
Pose pose_from_json(const Json& j);

// Purse instance schema: {"kind": "2d3d"|"3d3d"|"reg", "constraints": [...]}
// with per-constraint measurement arrays, "lambda" (row-major) and "beta"
// ("lambda_rot"/"beta_rot" and "lambda_trans"/"beta_trans" for "reg").
Json purse_to_json(const Purse& purse);
Purse purse_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace closure
