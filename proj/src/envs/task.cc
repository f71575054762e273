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

#include "gradseek/envs/task.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gradseek::envs {
namespace {

struct NamedTask {
  TaskId id;
  std::string_view name;
};

constexpr std::array<NamedTask, 8> kNames = {{
    {TaskId::kDrawerClose, "drawer-close"},
    {TaskId::kDrawerOpen, "drawer-open"},
    {TaskId::kDoorClose, "door-close"},
    {TaskId::kDoorOpen, "door-open"},
    {TaskId::kWindowClose, "window-close"},
    {TaskId::kWindowOpen, "window-open"},
    {TaskId::kChairRearrangement, "chair-rearrangement"},
    {TaskId::kBoxRearrangement, "box-rearrangement"},
}};

const Box3 kArmWorkspace{{-0.5, 0.40, 0.05}, {0.5, 1.0, 0.30}};
const Vec3 kArmHome{0.0, 0.55, 0.20};
const Vec3 kArmHomeJitter{0.05, 0.03, 0.03};

Articulation Drawer() {
  Articulation joint;
  joint.kind = ArticulationKind::kSlide;
  joint.origin = {0.0, 0.80, 0.10};
  joint.axis = {0.0, -1.0, 0.0};
  joint.q_min = 0.0;
  joint.q_max = 0.2;
  return joint;
}

Articulation Window() {
  Articulation joint;
  joint.kind = ArticulationKind::kSlide;
  joint.origin = {0.10, 0.75, 0.16};
  joint.axis = {-1.0, 0.0, 0.0};
  joint.q_min = 0.0;
  joint.q_max = 0.2;
  return joint;
}

Articulation Door() {
  Articulation joint;
  joint.kind = ArticulationKind::kHinge;
  joint.origin = {-0.2, 0.90, 0.12};
  joint.radius = 0.3;
  joint.angle0 = 0.0;
  joint.direction = -1.0;
  joint.q_min = 0.0;
  joint.q_max = std::numbers::pi / 2.0;
  return joint;
}

TaskConfig Articulated(TaskId id, TextPair texts, Articulation joint,
                     bool toward_max, double threshold, int max_steps) {
  TaskConfig task;
  task.id = id;
  task.texts = std::move(texts);
  task.success_threshold = threshold;
  task.max_steps = max_steps;
  task.dt = 0.1;
  task.action_scale = 0.01;
  task.contact_radius = 0.03;
  task.articulation = joint;
  const double span = joint.q_max - joint.q_min;
  // Start near one limit, target the other.
  const double jitter = 0.1 * span;
  task.sampler.q_start = toward_max ? joint.q_min + jitter : joint.q_max - jitter;
  task.sampler.q_jitter = jitter;
  task.q_target = toward_max ? joint.q_max : joint.q_min;
  task.target = HandlePosition(joint, task.q_target);
  task.workspace = kArmWorkspace;
  task.sampler.robot_home = kArmHome;
  task.sampler.robot_jitter = kArmHomeJitter;
  return task;
}

}  // namespace

std::string_view TaskName(TaskId id) {
  for (const auto& entry : kNames) {
    if (entry.id == id) return entry.name;
  }
  return "unknown";
}

std::optional<TaskId> ParseTaskId(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.id;
  }
  return std::nullopt;
}

bool IsArticulated(TaskId id) {
  return std::find(kArticulatedTasks.begin(), kArticulatedTasks.end(), id) !=
         kArticulatedTasks.end();
}

Vec3 HandlePosition(const Articulation& joint, double q) {
  switch (joint.kind) {
    case ArticulationKind::kSlide:
      return joint.origin + q * joint.axis;
    case ArticulationKind::kHinge: {
      const double a = joint.angle0 + joint.direction * q;
      return joint.origin + Vec3{joint.radius * std::cos(a),
                                 joint.radius * std::sin(a), 0.0};
    }
    case ArticulationKind::kFreePlane:
      break;
  }
  return joint.origin;
}

Vec3 Box3::Clamp(const Vec3& p) const {
  return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y),
          std::clamp(p.z, lo.z, hi.z)};
}

bool Box3::Contains(const Vec3& p) const {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
         p.z >= lo.z && p.z <= hi.z;
}

double Rect2::DistanceTo(double x, double y) const {
  const double dx = std::max({x_min - x, 0.0, x - x_max});
  const double dy = std::max({y_min - y, 0.0, y - y_max});
  return std::hypot(dx, dy);
}

TaskConfig DefaultTask(TaskId id) {
  switch (id) {
    case TaskId::kDrawerClose:
      return Articulated(id,
                         {"close a drawer with a drawer handle",
                          "open a drawer with a drawer handle"},
                         Drawer(), /*toward_max=*/false, 0.03, 1000);
    case TaskId::kDrawerOpen:
      return Articulated(id,
                         {"open a drawer with a drawer handle",
                          "close a drawer with a drawer handle"},
                         Drawer(), /*toward_max=*/true, 0.03, 1000);
    case TaskId::kDoorClose:
      return Articulated(id,
                         {"close a door with a door handle",
                          "open a door with a door handle"},
                         Door(), /*toward_max=*/false, 0.05, 1000);
    case TaskId::kDoorOpen:
      return Articulated(id,
                         {"open a door with a door handle",
                          "close a door with a door handle"},
                         Door(), /*toward_max=*/true, 0.05, 1000);
    case TaskId::kWindowClose:
      return Articulated(id,
                         {"close a window in the right direction",
                          "open a window in the left direction"},
                         Window(), /*toward_max=*/false, 0.05, 500);
    case TaskId::kWindowOpen:
      return Articulated(id,
                         {"open a window in the left direction",
                          "close a window in the right direction"},
                         Window(), /*toward_max=*/true, 0.05, 500);
    case TaskId::kChairRearrangement: {
      TaskConfig task;
      task.id = id;
      task.texts = {"place a green chair under the table",
                    "place a green chair away from the table"};
      task.success_threshold = 0.05;
      task.max_steps = 200;
      task.dt = 0.2;
      task.action_scale = 0.05;
      task.articulation.kind = ArticulationKind::kFreePlane;
      task.target = {0.8, 0.0, 0.0};
      task.target_region = Rect2{0.45, 1.15, -0.25, 0.25};
      task.workspace = {{-1.5, -1.5, 0.0}, {1.5, 1.5, 0.0}};
      task.unicycle = {1.0 / task.dt, 2.0, 0.3, 1.5};
      task.sampler.robot_home = {-0.4, 0.0, 0.0};
      task.sampler.robot_jitter = {0.2, 0.3, 0.0};
      task.sampler.heading_min = -std::numbers::pi;
      task.sampler.heading_max = std::numbers::pi;
      return task;
    }
    case TaskId::kBoxRearrangement: {
      TaskConfig task;
      task.id = id;
      task.texts = {"place a red box next to the yellow box",
                    "place a red box away from the yellow box"};
      task.success_threshold = 0.05;
      task.max_steps = 50;
      task.dt = 1.0;
      task.action_scale = 0.025;
      task.articulation.kind = ArticulationKind::kFreePlane;
      // The adjacent slot is on the yellow box's -x side.
      task.landmark = {0.1, 0.05, 0.0};
      task.target = {0.03, 0.05, 0.0};
      task.workspace = {{-0.3, -0.3, 0.0}, {0.3, 0.3, 0.0}};
      task.sampler.robot_home = {-0.15, -0.15, 0.0};
      task.sampler.robot_jitter = {0.08, 0.08, 0.0};
      return task;
    }
  }
  return {};
}

}  // namespace gradseek::envs
