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

#ifndef GRADSEEK_DATAGEN_DATASET_H_
#define GRADSEEK_DATAGEN_DATASET_H_

#include <filesystem>
#include <span>
#include <vector>

#include "gradseek/datagen/sample.h"

namespace gradseek::datagen {

// On-disk layout shared with the fine-tuning bridge:
//   <root>/images/<task>_<k>.png
//   <root>/manifest.jsonl  {"task":..,"k":..,"y":..,"image":"images/.."}
//   <root>/pairs.jsonl     {"task":..,"i1":..,"i2":..,"t1":..,"t2":..}
// i1/i2 index lines of manifest.jsonl. All failures throw IoError.
inline constexpr char kManifestFile[] = "manifest.jsonl";
inline constexpr char kPairsFile[] = "pairs.jsonl";

struct Manifest {
  std::filesystem::path path;
  size_t records = 0;
};

// Writes images and manifest; returns the manifest location. Sets each
// sample's image_path.
Manifest ExportSamples(std::span<Sample> samples,
                       const std::filesystem::path& root);
Manifest ExportPairs(std::span<const LabeledPair> pairs,
                     const std::filesystem::path& root);

// Reads manifest.jsonl and the referenced PNG bytes.
std::vector<Sample> ImportSamples(const std::filesystem::path& root);

// Reads a pairs file; y1/y2 are filled from the dataset it indexes.
std::vector<LabeledPair> ImportPairs(const std::filesystem::path& pairs_file,
                                     std::span<const Sample> dataset);

}  // namespace gradseek::datagen

#endif  // GRADSEEK_DATAGEN_DATASET_H_
