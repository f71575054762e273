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

#include "gradseek/datagen/accuracy.h"

#include <cmath>

#include "gradseek/core/error.h"

namespace gradseek::datagen {

AccuracyReport TextAccuracy(std::span<const LabeledPair> pairs,
                            std::span<const Sample> dataset,
                            similarity::Oracle& oracle) {
  AccuracyReport report;
  report.bits.reserve(pairs.size());
  int hits = 0;
  for (const LabeledPair& pair : pairs) {
    if (std::abs(pair.y1 - pair.y2) < kTieTolerance) {
      ++report.excluded;
      continue;
    }
    similarity::OracleFrame now{pair.y1, nullptr};
    similarity::OracleFrame prev{pair.y2, nullptr};
    if (oracle.needs_images()) {
      if (pair.i1 >= dataset.size() || pair.i2 >= dataset.size()) {
        throw Error(ErrorCode::kInvalidArgument, "pair index out of range");
      }
      now.image = &dataset[pair.i1].image;
      prev.image = &dataset[pair.i2].image;
    }
    const auto signal = oracle.Compare(now, prev);
    const double dr = signal ? signal->difference() : 0.0;
    const uint8_t bit = dr * (pair.y1 - pair.y2) >= 0.0 ? 1 : 0;
    report.bits.push_back(bit);
    hits += bit;
  }
  report.n_trials = static_cast<int>(report.bits.size());
  report.accuracy =
      report.n_trials == 0 ? 0.0 : static_cast<double>(hits) / report.n_trials;
  return report;
}

double CalibrateNoiseScale(std::span<const LabeledPair> pairs,
                           std::span<const Sample> dataset,
                           const envs::TaskConfig& task, double target,
                           uint64_t seed, double upper, int iterations,
                           int dim) {
  if (!(target > 0.5 && target <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target accuracy must be in (0.5, 1]");
  }
  auto measure = [&](double sigma) {
    auto oracle = similarity::MakeOracle(similarity::OracleConfig::Noise(sigma, dim),
                                         task, SeededRng(seed, 3));
    return TextAccuracy(pairs, dataset, *oracle).accuracy;
  };
  double lo = 0.0;
  double hi = upper;
  while (measure(hi) > target && hi < 1e6) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (measure(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gradseek::datagen
