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

#ifndef GRADSEEK_HARNESS_TRIAL_H_
#define GRADSEEK_HARNESS_TRIAL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gradseek/controller/controller.h"
#include "gradseek/envs/scene.h"
#include "gradseek/envs/task.h"
#include "gradseek/similarity/oracle.h"

namespace gradseek::harness {

// A benchmark column: the gradient source plus, for similarity gradients,
// the oracle producing (R1, R2).
struct Method {
  std::string label;
  controller::GradientSource gradient = controller::GradientSource::kSimilarity;
  similarity::OracleConfig oracle = similarity::OracleConfig::Signflip(1.0);

  static Method Goal();
  static Method FromOracle(similarity::OracleConfig oracle);
};

std::string DefaultMethodLabel(const Method& method);

struct TrajectoryPoint {
  int t = 0;
  Pose2 robot;
  Vec3 object;
  AxisArray u{};
  double r1 = 0.0;
  double r2 = 0.0;
};

struct TrialRecord {
  envs::TaskId task_id = envs::TaskId::kDrawerClose;
  uint64_t seed = 0;
  uint64_t init_seed = 0;
  std::string method;
  bool success = false;
  bool errored = false;
  std::string error;
  int steps_used = 0;
  double final_distance = 0.0;
  int retarget_events = 0;
  std::string trajectory_hash;
  std::optional<std::vector<TrajectoryPoint>> trajectory;
};

struct TrialOptions {
  bool record_trajectory = false;
  // Seed for the initial-state sampler; defaults to the trial seed.
  std::optional<uint64_t> init_seed;
  // Called with the initial scene and after every environment step.
  std::function<void(const envs::SceneState&)> on_scene;
};

// Per-task controller defaults: three axes with the approach term and stuck
// escape for the articulated tasks; planar x/y for the rearrangement tasks
// with their own probe magnitudes.
controller::ControllerConfig DefaultControllerConfig(envs::TaskId id);

// Closed loop: input, environment step, observation, similarity on even
// steps, until success or max_steps. Deterministic for synthetic oracles.
// Remote transport/protocol failures yield an Errored record.
TrialRecord RunTrial(const envs::TaskConfig& task,
                     const controller::ControllerConfig& ctrl,
                     const Method& method, uint64_t seed,
                     const TrialOptions& options = {});

}  // namespace gradseek::harness

#endif  // GRADSEEK_HARNESS_TRIAL_H_
