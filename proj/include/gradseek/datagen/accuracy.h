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

#ifndef GRADSEEK_DATAGEN_ACCURACY_H_
#define GRADSEEK_DATAGEN_ACCURACY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "gradseek/datagen/sample.h"
#include "gradseek/similarity/oracle.h"

namespace gradseek::datagen {

struct AccuracyReport {
  double accuracy = 0.0;       // A = mean(a_t)
  int n_trials = 0;            // N_t, pairs scored
  int excluded = 0;            // pairs dropped for |y1 - y2| < kTieTolerance
  std::vector<uint8_t> bits;   // a_t

  friend bool operator==(const AccuracyReport&, const AccuracyReport&) = default;
};

inline constexpr double kTieTolerance = 1e-12;

// For each pair, (R1, R2) is the oracle's similarity for the change from
// the second sample to the first (h1 - h2), and a_t = 1 iff
// (R1 - R2)(y1 - y2) >= 0. A missing signal counts as R1 = R2. Ties in y are
// excluded since any oracle scores 1 on them.
AccuracyReport TextAccuracy(std::span<const LabeledPair> pairs,
                            std::span<const Sample> dataset,
                            similarity::Oracle& oracle);

// Noise scale at which a noise oracle reaches `target` accuracy on the
// given pairs, by bisection over [0, upper]. Every evaluation reuses `seed`
// so the measured curve is monotone in sigma.
double CalibrateNoiseScale(std::span<const LabeledPair> pairs,
                           std::span<const Sample> dataset,
                           const envs::TaskConfig& task, double target,
                           uint64_t seed, double upper = 1.0,
                           int iterations = 40, int dim = 2);

}  // namespace gradseek::datagen

#endif  // GRADSEEK_DATAGEN_ACCURACY_H_
