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

#include <vector>

#include "gradseek/core/error.h"
#include "gradseek/core/rng.h"
#include "gradseek/envs/render.h"
#include "gradseek/envs/scene.h"
#include "gtest/gtest.h"

namespace gradseek::envs {
namespace {

TEST(RenderTest, DefaultSizeAndValidPng) {
  const TaskConfig task = DefaultTask(TaskId::kDrawerOpen);
  SeededRng rng(1, 1);
  const ObservationRaster r = RenderObservation(SampleInitialState(task, rng), task);
  EXPECT_EQ(r.width, 224);
  EXPECT_EQ(r.height, 224);
  ASSERT_GT(r.png.size(), 8u);
  EXPECT_EQ(r.png[0], 0x89);
  EXPECT_EQ(r.png[1], 'P');
  const RgbImage decoded = DecodePng(r.png);
  EXPECT_EQ(decoded.width, 224);
  EXPECT_EQ(decoded.height, 224);
}

TEST(RenderTest, EncodeDecodeRoundTrip) {
  for (TaskId id : kAllTasks) {
    const TaskConfig task = DefaultTask(id);
    SeededRng rng(4, 1);
    const RgbImage image = RasterizeScene(SampleInitialState(task, rng), task);
    EXPECT_EQ(DecodePng(EncodePng(image)).pixels, image.pixels);
  }
}

TEST(RenderTest, Deterministic) {
  for (TaskId id : kAllTasks) {
    const TaskConfig task = DefaultTask(id);
    SeededRng a(7, 1), b(7, 1);
    EXPECT_EQ(RenderObservation(SampleInitialState(task, a), task),
              RenderObservation(SampleInitialState(task, b), task));
  }
}

TEST(RenderTest, PixelScaleMotionChangesImage) {
  for (TaskId id : kAllTasks) {
    const TaskConfig task = DefaultTask(id);
    SeededRng rng(9, 1);
    SceneState s = SampleInitialState(task, rng);
    const double mpp = TaskCamera(task, {}).meters_per_pixel;
    SceneState moved = s;
    if (IsArticulated(id)) {
      const double step =
          task.articulation.kind == ArticulationKind::kHinge ? mpp / task.articulation.radius
                                                              : mpp;
      moved.articulation_q += moved.articulation_q + step <= task.articulation.q_max
                                  ? step
                                  : -step;
      moved.object = HandlePosition(task.articulation, moved.articulation_q);
    } else {
      moved.object.x += mpp;
      moved.robot.position = moved.object;
    }
    EXPECT_NE(RenderObservation(s, task).png, RenderObservation(moved, task).png)
        << TaskName(id);
    // A quarter pixel still shows up through area coverage.
    SceneState nudged = s;
    nudged.robot.position.x += 0.25 * mpp;
    if (!IsArticulated(id)) nudged.object = nudged.robot.position;
    EXPECT_NE(RasterizeScene(s, task).pixels, RasterizeScene(nudged, task).pixels)
        << TaskName(id);
  }
}

TEST(RenderTest, CustomSize) {
  const TaskConfig task = DefaultTask(TaskId::kBoxRearrangement);
  SeededRng rng(2, 1);
  const ObservationRaster r =
      RenderObservation(SampleInitialState(task, rng), task, {64, 32});
  EXPECT_EQ(r.width, 64);
  EXPECT_EQ(r.height, 32);
  const RgbImage d = DecodePng(r.png);
  EXPECT_EQ(d.width, 64);
  EXPECT_EQ(d.height, 32);
}

TEST(EncodePngTest, RejectsBadDimensions) {
  RgbImage bad;
  bad.width = 4;
  bad.height = 4;
  bad.pixels.resize(10);
  try {
    EncodePng(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncodeFailure);
  }
  EXPECT_THROW(DecodePng(std::vector<uint8_t>{1, 2, 3}), Error);
}

}  // namespace
}  // namespace gradseek::envs
