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

#ifndef GRADSEEK_ENVS_TASK_H_
#define GRADSEEK_ENVS_TASK_H_

#include <array>
#include <optional>
#include <string_view>

#include "gradseek/core/geometry.h"
#include "gradseek/similarity/text_pair.h"

namespace gradseek::envs {

enum class TaskId {
  kDrawerClose,
  kDrawerOpen,
  kDoorClose,
  kDoorOpen,
  kWindowClose,
  kWindowOpen,
  kChairRearrangement,
  kBoxRearrangement,
};

inline constexpr std::array<TaskId, 8> kAllTasks = {
    TaskId::kDrawerClose,  TaskId::kDrawerOpen,         TaskId::kDoorClose,
    TaskId::kDoorOpen,     TaskId::kWindowClose,        TaskId::kWindowOpen,
    TaskId::kChairRearrangement, TaskId::kBoxRearrangement};

inline constexpr std::array<TaskId, 6> kArticulatedTasks = {
    TaskId::kDrawerClose, TaskId::kDrawerOpen,  TaskId::kDoorClose,
    TaskId::kDoorOpen,    TaskId::kWindowClose, TaskId::kWindowOpen};

std::string_view TaskName(TaskId id);
std::optional<TaskId> ParseTaskId(std::string_view name);
bool IsArticulated(TaskId id);

enum class ArticulationKind { kSlide, kHinge, kFreePlane };

// 1-DOF joint geometry. For a slide the handle sits at origin + q * axis;
// for a hinge it sits at origin + radius * (cos a, sin a, 0) with
// a = angle0 + direction * q, origin being the pivot. q is meters for a
// slide and radians for a hinge.
struct Articulation {
  ArticulationKind kind = ArticulationKind::kFreePlane;
  Vec3 origin;
  Vec3 axis{1.0, 0.0, 0.0};
  double radius = 0.0;
  double angle0 = 0.0;
  double direction = 1.0;
  double q_min = 0.0;
  double q_max = 0.0;
};

// Handle position for joint coordinate q.
Vec3 HandlePosition(const Articulation& joint, double q);

struct Box3 {
  Vec3 lo;
  Vec3 hi;

  Vec3 Clamp(const Vec3& p) const;
  bool Contains(const Vec3& p) const;
};

struct Rect2 {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool Contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  // Planar distance from (x, y) to the rectangle; 0 inside.
  double DistanceTo(double x, double y) const;
};

struct UnicycleLimits {
  double k_v = 5.0;  // 1 / dt
  double k_omega = 2.0;
  double v_max = 0.3;
  double omega_max = 1.5;
};

// Seeded distribution over initial scenes. Articulated tasks draw q uniformly
// from [q_start - q_jitter, q_start + q_jitter] (clamped to the joint
// limits); the robot start is drawn uniformly from robot_home +/-
// robot_jitter per axis, heading from [heading_min, heading_max].
struct InitialSampler {
  double q_start = 0.0;
  double q_jitter = 0.0;
  Vec3 robot_home;
  Vec3 robot_jitter;
  double heading_min = 0.0;
  double heading_max = 0.0;
};

struct TaskConfig {
  TaskId id = TaskId::kDrawerClose;
  TextPair texts;
  double success_threshold = 0.03;  // meters
  int max_steps = 1000;
  double dt = 0.1;                  // seconds
  double action_scale = 0.01;       // meters of motion per control unit
  double contact_radius = 0.05;     // meters
  Articulation articulation;
  double q_target = 0.0;            // target joint coordinate (articulated)
  Vec3 target;                      // r_o
  Vec3 landmark;                    // fixed reference object (yellow box)
  std::optional<Rect2> target_region;  // containment success (chair)
  Box3 workspace;                   // end effector / robot bounds
  UnicycleLimits unicycle;
  InitialSampler sampler;
};

// Defaults for every task. Geometry is a desk-scale stand-in for the
// simulated furniture.
TaskConfig DefaultTask(TaskId id);

}  // namespace gradseek::envs

#endif  // GRADSEEK_ENVS_TASK_H_
