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

#ifndef GRADSEEK_DATAGEN_PAIRS_H_
#define GRADSEEK_DATAGEN_PAIRS_H_

#include <span>
#include <vector>

#include "gradseek/core/rng.h"
#include "gradseek/datagen/sample.h"

namespace gradseek::datagen {

// K ordered pairs of distinct indices drawn uniformly with replacement
// across pairs, each labeled with its ground-truth text order. Throws
// TooFewSamples for datasets with fewer than two entries.
std::vector<LabeledPair> SamplePairs(std::span<const Sample> dataset, int k,
                                     const TextPair& texts, SeededRng& rng);

}  // namespace gradseek::datagen

#endif  // GRADSEEK_DATAGEN_PAIRS_H_
