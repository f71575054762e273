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

#include "gradseek/envs/render.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "gradseek/core/error.h"

namespace gradseek::envs {
namespace {

// Linear-light canvas; quantized once at the end.
class Canvas {
 public:
  Canvas(int width, int height, const Camera& camera, Rgb background)
      : width_(width),
        height_(height),
        camera_(camera),
        data_(3 * static_cast<size_t>(width) * height) {
    for (size_t i = 0; i < data_.size(); ++i) data_[i] = background[i % 3];
  }

  // Axis-aligned world rectangle with exact per-pixel coverage.
  void FillRect(double x0, double y0, double x1, double y1, Rgb color,
                double alpha = 1.0) {
    const double px0 = camera_.PixelX(std::min(x0, x1));
    const double px1 = camera_.PixelX(std::max(x0, x1));
    const double py0 = camera_.PixelY(std::max(y0, y1));
    const double py1 = camera_.PixelY(std::min(y0, y1));
    const int ix0 = std::max(0, static_cast<int>(std::floor(px0)));
    const int ix1 = std::min(width_ - 1, static_cast<int>(std::floor(px1)));
    const int iy0 = std::max(0, static_cast<int>(std::floor(py0)));
    const int iy1 = std::min(height_ - 1, static_cast<int>(std::floor(py1)));
    for (int iy = iy0; iy <= iy1; ++iy) {
      const double cy = Overlap(py0, py1, iy);
      if (cy <= 0.0) continue;
      for (int ix = ix0; ix <= ix1; ++ix) {
        const double cx = Overlap(px0, px1, ix);
        if (cx > 0.0) Blend(ix, iy, color, alpha * cx * cy);
      }
    }
  }

  void FillSquare(const Vec3& center, double side, Rgb color,
                  double alpha = 1.0) {
    const double h = 0.5 * side;
    FillRect(center.x - h, center.y - h, center.x + h, center.y + h, color,
             alpha);
  }

  // Thick segment (capsule) via 4x4 supersampling.
  void FillSegment(const Vec3& a, const Vec3& b, double half_width,
                   Rgb color) {
    const double ax = camera_.PixelX(a.x), ay = camera_.PixelY(a.y);
    const double bx = camera_.PixelX(b.x), by = camera_.PixelY(b.y);
    const double hw = half_width / camera_.meters_per_pixel;
    const int ix0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - hw)));
    const int ix1 = std::min(width_ - 1, static_cast<int>(std::ceil(std::max(ax, bx) + hw)));
    const int iy0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - hw)));
    const int iy1 = std::min(height_ - 1, static_cast<int>(std::ceil(std::max(ay, by) + hw)));
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        int hits = 0;
        for (int sy = 0; sy < 4; ++sy) {
          for (int sx = 0; sx < 4; ++sx) {
            const double px = ix + (sx + 0.5) / 4.0;
            const double py = iy + (sy + 0.5) / 4.0;
            double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double ex = px - (ax + t * dx), ey = py - (ay + t * dy);
            if (ex * ex + ey * ey <= hw * hw) ++hits;
          }
        }
        if (hits > 0) Blend(ix, iy, color, hits / 16.0);
      }
    }
  }

  RgbImage Quantize() const {
    RgbImage image{width_, height_, std::vector<uint8_t>(data_.size())};
    for (size_t i = 0; i < data_.size(); ++i) {
      image.pixels[i] =
          static_cast<uint8_t>(std::clamp(std::lround(data_[i]), 0L, 255L));
    }
    return image;
  }

 private:
  static double Overlap(double lo, double hi, int cell) {
    return std::max(0.0, std::min(hi, cell + 1.0) - std::max(lo, double(cell)));
  }

  void Blend(int ix, int iy, Rgb color, double coverage) {
    const size_t i = 3 * (static_cast<size_t>(iy) * width_ + ix);
    for (int c = 0; c < 3; ++c) {
      data_[i + c] = data_[i + c] * (1.0 - coverage) + color[c] * coverage;
    }
  }

  int width_;
  int height_;
  Camera camera_;
  std::vector<double> data_;
};

void DrawArticulated(Canvas& canvas, const SceneState& scene,
                     const TaskConfig& task) {
  const Articulation& joint = task.articulation;
  const Vec3 closed = HandlePosition(joint, joint.q_min);
  const Vec3& handle = scene.object;
  switch (task.id) {
    case TaskId::kDrawerClose:
    case TaskId::kDrawerOpen:
      // Cabinet behind the closed handle, drawer box trailing the handle.
      canvas.FillRect(closed.x - 0.16, closed.y, closed.x + 0.16,
                      closed.y + 0.16, palette::kFurniture);
      canvas.FillRect(handle.x - 0.12, handle.y, handle.x + 0.12,
                      handle.y + 0.14, palette::kMoving);
      break;
    case TaskId::kWindowClose:
    case TaskId::kWindowOpen: {
      const Vec3 open = HandlePosition(joint, joint.q_max);
      canvas.FillRect(std::min(open.x, closed.x) - 0.02, closed.y - 0.012,
                      std::max(open.x, closed.x) + 0.24, closed.y + 0.03,
                      palette::kFurniture);
      canvas.FillRect(handle.x, closed.y - 0.004, handle.x + 0.2,
                      closed.y + 0.02, palette::kMoving);
      break;
    }
    case TaskId::kDoorClose:
    case TaskId::kDoorOpen:
      canvas.FillRect(joint.origin.x - 0.04, joint.origin.y,
                      closed.x + 0.06, joint.origin.y + 0.04,
                      palette::kFurniture);
      canvas.FillSegment(joint.origin, handle, 0.012, palette::kMoving);
      break;
    default:
      break;
  }
  canvas.FillSquare(scene.target, 0.02, palette::kTarget);
  canvas.FillSquare(handle, 0.03, palette::kHandle);
  // Apparent end effector size grows with height.
  const double side = 0.03 * (1.0 + 2.0 * scene.robot.position.z);
  canvas.FillSquare(scene.robot.position, side, palette::kEndEffector, 0.7);
}

void DrawChair(Canvas& canvas, const SceneState& scene, const TaskConfig& task) {
  if (task.target_region) {
    const Rect2& r = *task.target_region;
    canvas.FillRect(r.x_min, r.y_min, r.x_max, r.y_max, palette::kFurniture);
  }
  canvas.FillSquare(scene.object, 0.2, palette::kChair, 0.85);
  const Vec3 nose = scene.object + Vec3{0.1 * std::cos(scene.robot.heading),
                                        0.1 * std::sin(scene.robot.heading),
                                        0.0};
  canvas.FillSegment(scene.object, nose, 0.02, palette::kEndEffector);
}

void DrawBox(Canvas& canvas, const SceneState& scene, const TaskConfig& task) {
  canvas.FillSquare(task.landmark, 0.06, palette::kYellowBox);
  canvas.FillSquare(scene.target, 0.015, palette::kTarget);
  canvas.FillSquare(scene.object, 0.06, palette::kRedBox);
}

void AppendBytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void FlushNothing(png_structp) {}

// libpng reports errors by longjmp; the message is kept for the exception
// raised once control is back in C++.
[[noreturn]] void PngError(png_structp png, png_const_charp message) {
  auto* slot = static_cast<std::string*>(png_get_error_ptr(png));
  *slot = message;
  png_longjmp(png, 1);
}

void PngWarning(png_structp, png_const_charp) {}

}  // namespace

Camera TaskCamera(const TaskConfig& task, const RenderOptions& options) {
  const Box3& w = task.workspace;
  const double extent = std::max(w.hi.x - w.lo.x, w.hi.y - w.lo.y);
  const double mpp =
      extent / static_cast<double>(std::min(options.width, options.height));
  const double cx = 0.5 * (w.lo.x + w.hi.x);
  const double cy = 0.5 * (w.lo.y + w.hi.y);
  return {cx - 0.5 * options.width * mpp, cy + 0.5 * options.height * mpp,
          mpp};
}

RgbImage RasterizeScene(const SceneState& scene, const TaskConfig& task,
                        const RenderOptions& options) {
  Canvas canvas(options.width, options.height, TaskCamera(task, options),
                palette::kBackground);
  if (IsArticulated(task.id)) {
    DrawArticulated(canvas, scene, task);
  } else if (task.id == TaskId::kChairRearrangement) {
    DrawChair(canvas, scene, task);
  } else {
    DrawBox(canvas, scene, task);
  }
  return canvas.Quantize();
}

std::vector<uint8_t> EncodePng(const RgbImage& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() != 3 * static_cast<size_t>(image.width) * image.height) {
    throw Error(ErrorCode::kEncodeFailure, "image dimensions do not match data");
  }
  const size_t stride = 3 * static_cast<size_t>(image.width);
  const uint8_t* raw = image.pixels.data();
  std::vector<uint8_t> out;
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            PngError, PngWarning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::kEncodeFailure, "libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kEncodeFailure, "png: " + message);
  }
  png_set_write_fn(png, &out, AppendBytes, FlushNothing);
  png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    png_write_row(png, raw + y * stride);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

RgbImage DecodePng(std::span<const uint8_t> bytes) {
  png_image decoded{};
  decoded.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&decoded, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kEncodeFailure,
                std::string("png decode: ") + decoded.message);
  }
  decoded.format = PNG_FORMAT_RGB;
  RgbImage image;
  image.width = static_cast<int>(decoded.width);
  image.height = static_cast<int>(decoded.height);
  image.pixels.resize(PNG_IMAGE_SIZE(decoded));
  if (!png_image_finish_read(&decoded, nullptr, image.pixels.data(), 0,
                             nullptr)) {
    png_image_free(&decoded);
    throw Error(ErrorCode::kEncodeFailure,
                std::string("png decode: ") + decoded.message);
  }
  return image;
}

ObservationRaster RenderObservation(const SceneState& scene,
                                    const TaskConfig& task,
                                    const RenderOptions& options) {
  return {options.width, options.height,
          EncodePng(RasterizeScene(scene, task, options))};
}

}  // namespace gradseek::envs
