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

#include "gradseek/similarity/features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gradseek/core/error.h"

namespace gradseek::similarity {
namespace {

void CheckDims(const FeatureVector& a, const FeatureVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimMismatch,
                "feature dims " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

}  // namespace

double FeatureVector::Norm() const {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

FeatureVector operator-(const FeatureVector& a, const FeatureVector& b) {
  CheckDims(a, b);
  FeatureVector out;
  out.values.resize(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

double Cosine(const FeatureVector& a, const FeatureVector& b) {
  CheckDims(a, b);
  const double na = a.Norm();
  const double nb = b.Norm();
  if (na < kZeroNormThreshold || nb < kZeroNormThreshold) {
    throw Error(ErrorCode::kZeroNorm, "cosine of a zero-norm feature vector");
  }
  double dot = 0.0;
  for (size_t i = 0; i < a.dim(); ++i) dot += a.values[i] * b.values[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::optional<SimilaritySignal> DirectionSimilarity(
    const FeatureVector& h_now, const FeatureVector& h_prev,
    const TextFeatures& texts) {
  const FeatureVector diff = h_now - h_prev;
  if (diff.Norm() < kZeroNormThreshold) return std::nullopt;
  return SimilaritySignal{Cosine(diff, texts.g1), Cosine(diff, texts.g2)};
}

}  // namespace gradseek::similarity
