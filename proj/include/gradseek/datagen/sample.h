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

#ifndef GRADSEEK_DATAGEN_SAMPLE_H_
#define GRADSEEK_DATAGEN_SAMPLE_H_

#include <string>

#include "gradseek/envs/render.h"
#include "gradseek/envs/scene.h"
#include "gradseek/envs/task.h"
#include "gradseek/similarity/text_pair.h"

namespace gradseek::datagen {

// One collected frame: image I[k] and progress y[k] <= 0.
struct Sample {
  envs::TaskId task = envs::TaskId::kDrawerClose;
  int k = 0;
  double y = 0.0;
  envs::ObservationRaster image;
  std::string image_path;  // relative to the dataset root once exported

  friend bool operator==(const Sample&, const Sample&) = default;
};

// y = -|r_o - x_o|.
inline double Progress(const envs::SceneState& scene) {
  return envs::Progress(scene);
}

// Ground-truth text order: (T1, T2) if y2 > y1, else (T2, T1). Ties fall
// into the second branch.
TextPair LabelTexts(double y1, double y2, const TextPair& texts);

// Pair of dataset entries with their ground-truth text order. Entries are
// referenced by index into the dataset they were drawn from.
struct LabeledPair {
  envs::TaskId task = envs::TaskId::kDrawerClose;
  size_t i1 = 0;
  size_t i2 = 0;
  double y1 = 0.0;
  double y2 = 0.0;
  TextPair text_order;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

LabeledPair LabelPair(const Sample& s1, size_t i1, const Sample& s2, size_t i2,
                      const TextPair& texts);

}  // namespace gradseek::datagen

#endif  // GRADSEEK_DATAGEN_SAMPLE_H_
