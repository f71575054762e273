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

#include "gradseek/envs/scene.h"

#include <algorithm>
#include <cmath>

namespace gradseek::envs {
namespace {

Vec3 Jittered(const Vec3& center, const Vec3& half_width, SeededRng& rng) {
  return {center.x + rng.Uniform(-half_width.x, half_width.x),
          center.y + rng.Uniform(-half_width.y, half_width.y),
          center.z + rng.Uniform(-half_width.z, half_width.z)};
}

// Signed change of the joint coordinate produced by moving the end effector
// from `from` to `to` while in contact.
double JointAdvance(const Articulation& joint, const Vec3& from,
                    const Vec3& to) {
  switch (joint.kind) {
    case ArticulationKind::kSlide:
      return Dot(joint.axis, to - from);
    case ArticulationKind::kHinge: {
      const double a_from =
          std::atan2(from.y - joint.origin.y, from.x - joint.origin.x);
      const double a_to =
          std::atan2(to.y - joint.origin.y, to.x - joint.origin.x);
      return NormalizeAngle(a_to - a_from) * joint.direction;
    }
    case ArticulationKind::kFreePlane:
      break;
  }
  return 0.0;
}

}  // namespace

SceneState SampleInitialState(const TaskConfig& task, SeededRng& rng) {
  const InitialSampler& s = task.sampler;
  SceneState scene;
  if (IsArticulated(task.id)) {
    const Articulation& joint = task.articulation;
    scene.articulation_q =
        std::clamp(s.q_start + rng.Uniform(-s.q_jitter, s.q_jitter),
                   joint.q_min, joint.q_max);
    scene.object = HandlePosition(joint, scene.articulation_q);
    scene.robot.position =
        task.workspace.Clamp(Jittered(s.robot_home, s.robot_jitter, rng));
  } else {
    scene.robot.position =
        task.workspace.Clamp(Jittered(s.robot_home, s.robot_jitter, rng));
    scene.robot.heading =
        NormalizeAngle(rng.Uniform(s.heading_min, s.heading_max));
    scene.object = scene.robot.position;
  }
  scene.object_initial = scene.object;
  scene.target = task.target;
  return scene;
}

double Progress(const SceneState& scene) {
  return -Distance(scene.target, scene.object);
}

SceneState StepArticulated(const SceneState& scene, const TaskConfig& task,
                           const AxisArray& u) {
  SceneState next = scene;
  const Vec3 from = scene.robot.position;
  const Vec3 to = task.workspace.Clamp(from + task.action_scale * ToVec3(u));
  if (Distance(from, scene.object) <= task.contact_radius) {
    const Articulation& joint = task.articulation;
    next.articulation_q =
        std::clamp(scene.articulation_q + JointAdvance(joint, from, to),
                   joint.q_min, joint.q_max);
    next.object = HandlePosition(joint, next.articulation_q);
  }
  next.robot.position = to;
  next.time = scene.time + task.dt;
  return next;
}

Pose2 StepUnicycle(const Pose2& pose, double v, double omega, double dt) {
  Pose2 next = pose;
  next.position.x += v * std::cos(pose.heading) * dt;
  next.position.y += v * std::sin(pose.heading) * dt;
  next.heading = NormalizeAngle(pose.heading + omega * dt);
  return next;
}

UnicycleCommand DisplacementToUnicycle(double ux, double uy, const Pose2& pose,
                                       const UnicycleLimits& limits) {
  const double magnitude = std::hypot(ux, uy);
  if (magnitude == 0.0) return {};
  const double error = NormalizeAngle(std::atan2(uy, ux) - pose.heading);
  const double along = std::max(0.0, std::cos(error));
  UnicycleCommand cmd;
  cmd.v = std::clamp(limits.k_v * magnitude * along, -limits.v_max,
                     limits.v_max);
  cmd.omega = std::clamp(limits.k_omega * error, -limits.omega_max,
                         limits.omega_max);
  return cmd;
}

SceneState StepRearrangement(const SceneState& scene, const TaskConfig& task,
                             const AxisArray& u) {
  SceneState next = scene;
  const double ux = task.action_scale * u[0];
  const double uy = task.action_scale * u[1];
  if (task.id == TaskId::kChairRearrangement) {
    const UnicycleCommand cmd =
        DisplacementToUnicycle(ux, uy, scene.robot, task.unicycle);
    next.robot = StepUnicycle(scene.robot, cmd.v, cmd.omega, task.dt);
  } else {
    next.robot.position.x += ux;
    next.robot.position.y += uy;
  }
  next.robot.position = task.workspace.Clamp(next.robot.position);
  next.object = next.robot.position;
  next.time = scene.time + task.dt;
  return next;
}

SceneState Step(const SceneState& scene, const TaskConfig& task,
                const AxisArray& u) {
  return IsArticulated(task.id) ? StepArticulated(scene, task, u)
                                : StepRearrangement(scene, task, u);
}

bool CheckSuccess(const SceneState& scene, const TaskConfig& task) {
  if (task.target_region) {
    return task.target_region->Contains(scene.object.x, scene.object.y);
  }
  return Distance(scene.object, scene.target) <= task.success_threshold;
}

double FinalDistance(const SceneState& scene, const TaskConfig& task) {
  if (task.target_region) {
    return task.target_region->DistanceTo(scene.object.x, scene.object.y);
  }
  return Distance(scene.object, scene.target);
}

}  // namespace gradseek::envs
