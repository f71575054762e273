// Copyright 2026 The Gradseek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRADSEEK_HARNESS_CONFIG_H_
#define GRADSEEK_HARNESS_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gradseek/controller/controller.h"
#include "gradseek/envs/task.h"
#include "gradseek/similarity/oracle.h"
#include "json.hpp"

namespace gradseek::harness {

using nlohmann::json;

// Every tunable of a run: task geometry and thresholds, controller
// parameters per task, and the default oracle. The digest covers the full
// tree, so two runs with equal digests used identical parameters.
struct RunConfig {
  std::map<envs::TaskId, envs::TaskConfig> tasks;
  std::map<envs::TaskId, controller::ControllerConfig> controllers;
  similarity::OracleConfig oracle = similarity::OracleConfig::Signflip(1.0);

  const envs::TaskConfig& task(envs::TaskId id) const { return tasks.at(id); }
  const controller::ControllerConfig& controller(envs::TaskId id) const {
    return controllers.at(id);
  }
};

RunConfig DefaultRunConfig();

// Overlays a config document onto the defaults:
//   {"controller": {...},          applied to every task
//    "tasks": {"<task>": {"task": {...}, "controller": {...}}},
//    "oracle": {"kind": "signflip", "p": 1.0}}
// Unknown keys and out-of-range values throw Config.
RunConfig ParseRunConfig(const json& doc);
RunConfig LoadRunConfig(const std::filesystem::path& path);

json ToJson(const RunConfig& config);
json ToJson(const envs::TaskConfig& task);
json ToJson(const controller::ControllerConfig& ctrl);
json ToJson(const similarity::OracleConfig& oracle);

// {"kind": "signflip", "p": ..} | {"kind": "noise", "sigma": .., "dim": ..}
// | {"kind": "remote", "endpoint": ..}. Throws Config.
similarity::OracleConfig ParseOracle(const json& doc);

// Hex FNV-1a of the canonical serialization.
std::string ConfigDigest(const RunConfig& config);

}  // namespace gradseek::harness

#endif  // GRADSEEK_HARNESS_CONFIG_H_
