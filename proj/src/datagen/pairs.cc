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

#include "gradseek/datagen/pairs.h"

#include <string>

#include "gradseek/core/error.h"

namespace gradseek::datagen {

TextPair LabelTexts(double y1, double y2, const TextPair& texts) {
  if (y2 > y1) return texts;
  return {texts.opposite, texts.instruction};
}

LabeledPair LabelPair(const Sample& s1, size_t i1, const Sample& s2, size_t i2,
                      const TextPair& texts) {
  LabeledPair pair;
  pair.task = s1.task;
  pair.i1 = i1;
  pair.i2 = i2;
  pair.y1 = s1.y;
  pair.y2 = s2.y;
  pair.text_order = LabelTexts(s1.y, s2.y, texts);
  return pair;
}

std::vector<LabeledPair> SamplePairs(std::span<const Sample> dataset, int k,
                                     const TextPair& texts, SeededRng& rng) {
  if (dataset.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "need at least 2 samples, have " +
                    std::to_string(dataset.size()));
  }
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative pair count");
  std::vector<LabeledPair> pairs;
  pairs.reserve(k);
  const uint64_t n = dataset.size();
  for (int i = 0; i < k; ++i) {
    const size_t i1 = rng.UniformIndex(n);
    size_t i2 = rng.UniformIndex(n - 1);
    if (i2 >= i1) ++i2;
    pairs.push_back(LabelPair(dataset[i1], i1, dataset[i2], i2, texts));
  }
  return pairs;
}

}  // namespace gradseek::datagen
