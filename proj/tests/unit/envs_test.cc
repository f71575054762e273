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

#include <cmath>
#include <numbers>

#include "gradseek/core/rng.h"
#include "gradseek/envs/scene.h"
#include "gradseek/envs/task.h"
#include "gtest/gtest.h"

namespace gradseek::envs {
namespace {

SceneState AtHandle(const TaskConfig& task, double q) {
  SceneState s;
  s.articulation_q = q;
  s.object = s.object_initial = HandlePosition(task.articulation, q);
  s.robot.position = s.object;
  s.target = task.target;
  return s;
}

double ManifoldError(const SceneState& s, const TaskConfig& task) {
  return Distance(s.object, HandlePosition(task.articulation, s.articulation_q));
}

TEST(TaskTest, NamesRoundTrip) {
  for (TaskId id : kAllTasks) {
    EXPECT_EQ(ParseTaskId(TaskName(id)), id);
  }
  EXPECT_FALSE(ParseTaskId("drawer-shut"));
  EXPECT_TRUE(IsArticulated(TaskId::kWindowOpen));
  EXPECT_FALSE(IsArticulated(TaskId::kBoxRearrangement));
}

TEST(TaskTest, PromptsAndBudgets) {
  const TaskConfig open = DefaultTask(TaskId::kDrawerOpen);
  EXPECT_EQ(open.texts.instruction, "open a drawer with a drawer handle");
  EXPECT_EQ(open.texts.opposite, "close a drawer with a drawer handle");
  EXPECT_EQ(DefaultTask(TaskId::kWindowClose).texts.instruction,
            "close a window in the right direction");
  EXPECT_EQ(DefaultTask(TaskId::kChairRearrangement).texts.instruction,
            "place a green chair under the table");
  EXPECT_EQ(DefaultTask(TaskId::kBoxRearrangement).texts.opposite,
            "place a red box away from the yellow box");
  EXPECT_EQ(open.success_threshold, 0.03);
  EXPECT_EQ(DefaultTask(TaskId::kDoorOpen).success_threshold, 0.05);
  EXPECT_EQ(DefaultTask(TaskId::kWindowOpen).success_threshold, 0.05);
  EXPECT_EQ(DefaultTask(TaskId::kWindowOpen).max_steps, 500);
  EXPECT_EQ(DefaultTask(TaskId::kDoorClose).max_steps, 1000);
  EXPECT_EQ(DefaultTask(TaskId::kChairRearrangement).max_steps, 200);
  EXPECT_DOUBLE_EQ(DefaultTask(TaskId::kChairRearrangement).dt, 0.2);
  EXPECT_EQ(DefaultTask(TaskId::kBoxRearrangement).max_steps, 50);
  EXPECT_DOUBLE_EQ(DefaultTask(TaskId::kBoxRearrangement).dt, 1.0);
  for (TaskId id : kAllTasks) {
    const TaskConfig t = DefaultTask(id);
    EXPECT_TRUE(t.texts.valid());
    EXPECT_GT(t.success_threshold, 0.0);
  }
}

TEST(ProgressTest, Examples) {
  SceneState s;
  s.target = {0.5, 0, 0};
  s.object = {0.1, 0, 0};
  EXPECT_NEAR(Progress(s), -0.4, 1e-15);
  s.object = s.target;
  EXPECT_EQ(Progress(s), 0.0);
}

TEST(StepArticulatedTest, FarFromHandleLeavesItAlone) {
  const TaskConfig task = DefaultTask(TaskId::kDrawerClose);
  SceneState s = AtHandle(task, 0.1);
  s.robot.position = s.object + Vec3{0.2, -0.1, 0.0};
  const SceneState next = StepArticulated(s, task, {1, 1, 1});
  EXPECT_EQ(next.object, s.object);
  EXPECT_EQ(next.articulation_q, s.articulation_q);
  EXPECT_NE(next.robot.position, s.robot.position);
}

TEST(StepArticulatedTest, MotionAlongSlideAdvancesJoint) {
  for (TaskId id : {TaskId::kDrawerOpen, TaskId::kWindowClose}) {
    const TaskConfig task = DefaultTask(id);
    const SceneState s = AtHandle(task, 0.1);
    const AxisArray u = ToAxisArray((0.02 / task.action_scale) * task.articulation.axis);
    const SceneState next = StepArticulated(s, task, u);
    EXPECT_NEAR(next.articulation_q, 0.12, 1e-12);
    EXPECT_LT(ManifoldError(next, task), 1e-9);
  }
}

TEST(StepArticulatedTest, RadialMotionLeavesDoorAngle) {
  const TaskConfig task = DefaultTask(TaskId::kDoorOpen);
  const SceneState s = AtHandle(task, 0.6);
  Vec3 radial = s.object - task.articulation.origin;
  radial.z = 0;
  radial = (1.0 / Norm(radial)) * radial;
  const SceneState next =
      StepArticulated(s, task, ToAxisArray((0.01 / task.action_scale) * radial));
  EXPECT_NEAR(next.articulation_q, 0.6, 1e-12);
}

TEST(StepArticulatedTest, DoorFollowsTangentialMotion) {
  const TaskConfig task = DefaultTask(TaskId::kDoorOpen);
  const SceneState s = AtHandle(task, 0.6);
  const double dq = 0.02;
  const Vec3 d = HandlePosition(task.articulation, 0.6 + dq) - s.object;
  const SceneState next =
      StepArticulated(s, task, ToAxisArray((1.0 / task.action_scale) * d));
  EXPECT_NEAR(next.articulation_q, 0.6 + dq, 1e-12);
}

TEST(StepArticulatedTest, ReversingDisplacementRestoresJoint) {
  SeededRng rng(5, 0);
  for (TaskId id : kArticulatedTasks) {
    const TaskConfig task = DefaultTask(id);
    const double mid = 0.5 * (task.articulation.q_min + task.articulation.q_max);
    for (int i = 0; i < 200; ++i) {
      const SceneState s = AtHandle(task, mid);
      const AxisArray u{rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1)};
      const SceneState there = StepArticulated(s, task, u);
      ASSERT_LE(Distance(there.robot.position, there.object), task.contact_radius);
      const SceneState back =
          StepArticulated(there, task, {-u[0], -u[1], -u[2]});
      EXPECT_NEAR(back.articulation_q, s.articulation_q, 1e-12) << TaskName(id);
    }
  }
}

TEST(StepArticulatedTest, InvariantsUnderRandomInputs) {
  for (TaskId id : kArticulatedTasks) {
    const TaskConfig task = DefaultTask(id);
    SeededRng rng(static_cast<uint64_t>(id), 0);
    SceneState s = SampleInitialState(task, rng);
    s.robot.position = s.object;
    for (int t = 0; t < 3000; ++t) {
      // Bias toward the handle so contact happens often.
      AxisArray u{rng.Uniform(-3, 3), rng.Uniform(-3, 3), rng.Uniform(-3, 3)};
      if (t % 3 == 0) {
        u = ToAxisArray((1.0 / task.action_scale) * (s.object - s.robot.position));
      }
      const SceneState next = Step(s, task, u);
      EXPECT_EQ(next, Step(s, task, u));
      s = next;
      ASSERT_LT(ManifoldError(s, task), 1e-9);
      ASSERT_GE(s.articulation_q, task.articulation.q_min);
      ASSERT_LE(s.articulation_q, task.articulation.q_max);
      ASSERT_TRUE(task.workspace.Contains(s.robot.position));
    }
  }
}

TEST(StepUnicycleTest, Examples) {
  const Pose2 p{{0.1, 0.2, 0}, 0.3};
  const Pose2 spun = StepUnicycle(p, 0.0, 1.0, 0.2);
  EXPECT_EQ(spun.position, p.position);
  EXPECT_NEAR(spun.heading, 0.5, 1e-15);
  const Pose2 fwd = StepUnicycle({{0, 0, 0}, 0.0}, 0.1, 0.0, 0.2);
  EXPECT_NEAR(fwd.position.x, 0.02, 1e-15);
  EXPECT_EQ(fwd.position.y, 0.0);
}

TEST(StepUnicycleTest, DisplacementBoundedAndHeadingNormalized) {
  SeededRng rng(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const Pose2 p{{rng.Uniform(-1, 1), rng.Uniform(-1, 1), 0},
                  rng.Uniform(-std::numbers::pi, std::numbers::pi)};
    const double v = rng.Uniform(-0.3, 0.3), w = rng.Uniform(-1.5, 1.5);
    const Pose2 q = StepUnicycle(p, v, w, 0.2);
    EXPECT_LE(Distance(p.position, q.position), std::abs(v) * 0.2 + 1e-15);
    EXPECT_GT(q.heading, -std::numbers::pi);
    EXPECT_LE(q.heading, std::numbers::pi);
  }
}

TEST(DisplacementToUnicycleTest, Examples) {
  const UnicycleLimits lim;
  const Pose2 pose{{0, 0, 0}, 0.0};
  UnicycleCommand c = DisplacementToUnicycle(0.01, 0.0, pose, lim);
  EXPECT_EQ(c.omega, 0.0);
  EXPECT_GT(c.v, 0.0);
  c = DisplacementToUnicycle(-0.01, 1e-6, pose, lim);
  EXPECT_EQ(c.v, 0.0);
  EXPECT_EQ(c.omega, lim.omega_max);
  c = DisplacementToUnicycle(-0.01, -1e-6, pose, lim);
  EXPECT_EQ(c.omega, -lim.omega_max);
  c = DisplacementToUnicycle(0.0, 0.0, pose, lim);
  EXPECT_EQ(c.v, 0.0);
  EXPECT_EQ(c.omega, 0.0);
  c = DisplacementToUnicycle(5.0, 0.0, pose, lim);
  EXPECT_EQ(c.v, lim.v_max);
}

TEST(StepRearrangementTest, BoxTranslatesRigidly) {
  const TaskConfig task = DefaultTask(TaskId::kBoxRearrangement);
  SeededRng rng(1, 1);
  const SceneState s = SampleInitialState(task, rng);
  const SceneState next =
      StepRearrangement(s, task, {0.01 / task.action_scale, 0.0, 0.0});
  EXPECT_NEAR(next.object.x, s.object.x + 0.01, 1e-15);
  EXPECT_EQ(next.object.y, s.object.y);
  EXPECT_EQ(next.object, next.robot.position);
  const SceneState clamped = StepRearrangement(s, task, {1e4, -1e4, 0.0});
  EXPECT_EQ(clamped.object.x, task.workspace.hi.x);
  EXPECT_EQ(clamped.object.y, task.workspace.lo.y);
}

TEST(StepRearrangementTest, ChairObjectFollowsRobot) {
  const TaskConfig task = DefaultTask(TaskId::kChairRearrangement);
  SeededRng rng(2, 1);
  SceneState s = SampleInitialState(task, rng);
  for (int t = 0; t < 500; ++t) {
    s = StepRearrangement(s, task, {rng.Uniform(-3, 3), rng.Uniform(-3, 3), 0});
    ASSERT_EQ(s.object, s.robot.position);
    ASSERT_TRUE(task.workspace.Contains(s.robot.position));
  }
}

TEST(CheckSuccessTest, DrawerThreshold) {
  const TaskConfig task = DefaultTask(TaskId::kDrawerClose);
  SceneState s;
  s.target = task.target;
  s.object = task.target + Vec3{0.029, 0, 0};
  EXPECT_TRUE(CheckSuccess(s, task));
  s.object = task.target + Vec3{0.031, 0, 0};
  EXPECT_FALSE(CheckSuccess(s, task));
}

TEST(CheckSuccessTest, ChairRegionContainment) {
  const TaskConfig task = DefaultTask(TaskId::kChairRearrangement);
  ASSERT_TRUE(task.target_region);
  const Rect2& r = *task.target_region;
  SceneState s;
  s.target = task.target;
  s.object = {0.5 * (r.x_min + r.x_max), 0.5 * (r.y_min + r.y_max), 0};
  EXPECT_TRUE(CheckSuccess(s, task));
  EXPECT_EQ(FinalDistance(s, task), 0.0);
  s.object = {r.x_min - 0.1, 0.0, 0.0};
  EXPECT_FALSE(CheckSuccess(s, task));
  EXPECT_NEAR(FinalDistance(s, task), 0.1, 1e-12);
}

TEST(SampleInitialStateTest, DeterministicAndOnManifold) {
  for (TaskId id : kAllTasks) {
    const TaskConfig task = DefaultTask(id);
    for (uint64_t seed = 0; seed < 50; ++seed) {
      SeededRng a(seed, 1), b(seed, 1);
      const SceneState s = SampleInitialState(task, a);
      EXPECT_EQ(s, SampleInitialState(task, b));
      EXPECT_EQ(s.object, s.object_initial);
      EXPECT_LE(Progress(s), 0.0);
      EXPECT_FALSE(CheckSuccess(s, task)) << TaskName(id) << " seed " << seed;
      if (IsArticulated(id)) {
        EXPECT_LT(ManifoldError(s, task), 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace gradseek::envs
