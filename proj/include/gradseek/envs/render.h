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

#ifndef GRADSEEK_ENVS_RENDER_H_
#define GRADSEEK_ENVS_RENDER_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gradseek/envs/scene.h"
#include "gradseek/envs/task.h"

namespace gradseek::envs {

using Rgb = std::array<uint8_t, 3>;

// 8-bit RGB, row-major, top row first.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  Rgb At(int x, int y) const {
    const size_t i = 3 * (static_cast<size_t>(y) * width + x);
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
};

// PNG-encoded observation I[t].
struct ObservationRaster {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> png;

  friend bool operator==(const ObservationRaster&,
                         const ObservationRaster&) = default;
};

struct RenderOptions {
  int width = 224;
  int height = 224;
};

// Fixed top-down camera over the task's workspace: world (x, y) maps to
// pixel ((x - left) / mpp, (top - y) / mpp).
struct Camera {
  double left = 0.0;
  double top = 0.0;
  double meters_per_pixel = 1.0;

  double PixelX(double x) const { return (x - left) / meters_per_pixel; }
  double PixelY(double y) const { return (top - y) / meters_per_pixel; }
};

Camera TaskCamera(const TaskConfig& task, const RenderOptions& options);

namespace palette {
inline constexpr Rgb kBackground{236, 236, 232};
inline constexpr Rgb kFurniture{150, 110, 70};
inline constexpr Rgb kMoving{196, 160, 112};
inline constexpr Rgb kTarget{40, 190, 60};
inline constexpr Rgb kHandle{215, 40, 40};
inline constexpr Rgb kEndEffector{40, 80, 220};
inline constexpr Rgb kChair{30, 150, 50};
inline constexpr Rgb kYellowBox{230, 200, 30};
inline constexpr Rgb kRedBox{200, 30, 30};
}  // namespace palette

// Area-coverage rasterization: rectangles are integrated exactly, rotated
// shapes use 4x4 supersampling. Sub-pixel motion changes pixel values.
RgbImage RasterizeScene(const SceneState& scene, const TaskConfig& task,
                        const RenderOptions& options = {});

// Unfiltered scanlines, deflate level 6; throws EncodeFailure.
std::vector<uint8_t> EncodePng(const RgbImage& image);
RgbImage DecodePng(std::span<const uint8_t> bytes);

ObservationRaster RenderObservation(const SceneState& scene,
                                    const TaskConfig& task,
                                    const RenderOptions& options = {});

}  // namespace gradseek::envs

#endif  // GRADSEEK_ENVS_RENDER_H_
