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

#ifndef GRADSEEK_SIMILARITY_FEATURES_H_
#define GRADSEEK_SIMILARITY_FEATURES_H_

#include <optional>
#include <vector>

namespace gradseek::similarity {

// Embedding of an observation or a text in the shared similarity space.
struct FeatureVector {
  std::vector<double> values;

  size_t dim() const { return values.size(); }
  double Norm() const;

  friend FeatureVector operator-(const FeatureVector& a,
                                 const FeatureVector& b);
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Norms below this are treated as zero.
inline constexpr double kZeroNormThreshold = 1e-12;

// a.b / (|a||b|), clamped to [-1, 1]. Throws DimMismatch on unequal
// dimensions and ZeroNorm when either norm is below kZeroNormThreshold.
double Cosine(const FeatureVector& a, const FeatureVector& b);

// (R1, R2): similarity of a feature change to the instruction and the
// opposite text.
struct SimilaritySignal {
  double r1 = 0.0;
  double r2 = 0.0;

  double difference() const { return r1 - r2; }
  friend bool operator==(const SimilaritySignal&,
                         const SimilaritySignal&) = default;
};

struct TextFeatures {
  FeatureVector g1;  // instruction
  FeatureVector g2;  // opposite action
};

// r_i = Cosine(h_now - h_prev, g_i). Returns nullopt when the feature
// difference is degenerate (no observable change); the caller decides what
// that means. Throws on dimension mismatch or zero-norm text features.
std::optional<SimilaritySignal> DirectionSimilarity(
    const FeatureVector& h_now, const FeatureVector& h_prev,
    const TextFeatures& texts);

}  // namespace gradseek::similarity

#endif  // GRADSEEK_SIMILARITY_FEATURES_H_
