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

#ifndef GRADSEEK_ENVS_SCENE_H_
#define GRADSEEK_ENVS_SCENE_H_

#include "gradseek/core/geometry.h"
#include "gradseek/core/rng.h"
#include "gradseek/envs/task.h"

namespace gradseek::envs {

struct SceneState {
  Pose2 robot;           // end effector position (heading unused) or base pose
  Vec3 object;           // x_o: handle or movable object
  Vec3 object_initial;   // x_o[0]
  Vec3 target;           // r_o
  double articulation_q = 0.0;
  double time = 0.0;

  friend bool operator==(const SceneState&, const SceneState&) = default;
};

SceneState SampleInitialState(const TaskConfig& task, SeededRng& rng);

// Negative Euclidean distance from the object to its target.
double Progress(const SceneState& scene);

struct UnicycleCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

// End effector translates by u * action_scale (clamped to the workspace).
// When the end effector is within the contact radius of the handle before
// the move, the joint advances by the component of the actual displacement
// along the articulation: the tangent projection for a slide, the change of
// polar angle about the pivot for a hinge. The joint is clamped to its limits.
SceneState StepArticulated(const SceneState& scene, const TaskConfig& task,
                           const AxisArray& u);

// Forward-Euler unicycle integration with heading renormalized.
Pose2 StepUnicycle(const Pose2& pose, double v, double omega, double dt);

// Maps a desired planar displacement (meters) onto (v, omega).
UnicycleCommand DisplacementToUnicycle(double ux, double uy, const Pose2& pose,
                                       const UnicycleLimits& limits);

// Chair: unicycle base, object rigidly attached. Box: end effector and box
// translate together in x, y, clamped to the table.
SceneState StepRearrangement(const SceneState& scene, const TaskConfig& task,
                             const AxisArray& u);

// Dispatches to StepArticulated or StepRearrangement.
SceneState Step(const SceneState& scene, const TaskConfig& task,
                const AxisArray& u);

bool CheckSuccess(const SceneState& scene, const TaskConfig& task);

// Distance used in trial records: object-to-target, or distance to the
// target region when the task has one.
double FinalDistance(const SceneState& scene, const TaskConfig& task);

}  // namespace gradseek::envs

#endif  // GRADSEEK_ENVS_SCENE_H_
