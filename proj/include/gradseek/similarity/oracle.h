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

#ifndef GRADSEEK_SIMILARITY_ORACLE_H_
#define GRADSEEK_SIMILARITY_ORACLE_H_

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "gradseek/core/rng.h"
#include "gradseek/envs/render.h"
#include "gradseek/envs/scene.h"
#include "gradseek/envs/task.h"
#include "gradseek/similarity/features.h"

namespace gradseek::similarity {

enum class OracleKind { kSyntheticNoise, kSyntheticSignflip, kRemote };

// Synthetic image features y * u + eta with eta ~ N(0, noise_scale^2 I_dim).
struct NoiseOracleParams {
  double noise_scale = 0.0;
  int dim = 2;
};

// Reports the true sign of the progress change with probability `accuracy`.
struct SignflipOracleParams {
  double accuracy = 1.0;
};

// Embedding service speaking the line-delimited JSON protocol.
struct RemoteOracleParams {
  std::string endpoint;
};

struct OracleConfig {
  std::variant<NoiseOracleParams, SignflipOracleParams, RemoteOracleParams>
      params;

  static OracleConfig Noise(double noise_scale, int dim = 2);
  static OracleConfig Signflip(double accuracy);
  static OracleConfig Remote(std::string endpoint);

  OracleKind kind() const;
  // Throws InvalidArgument on out-of-range parameters.
  void Validate() const;
};

std::string_view OracleKindName(OracleKind kind);

// Unit text axis u of a task in a dim-dimensional synthetic space.
FeatureVector SyntheticTextAxis(envs::TaskId task, int dim);

// g1 = +u, g2 = -u.
TextFeatures SyntheticTextFeatures(envs::TaskId task, int dim);

// Synthetic image feature for a scene with progress y. Throws
// WrongOracleKind unless oracle_cfg is a noise oracle.
FeatureVector SyntheticEmbed(const envs::SceneState& scene,
                             const envs::TaskConfig& task,
                             const OracleConfig& oracle_cfg, SeededRng& rng);
FeatureVector SyntheticEmbedProgress(double progress, envs::TaskId task,
                                     const NoiseOracleParams& params,
                                     SeededRng& rng);

// r1 - r2 = +0.5 sign(delta_y) with probability p, -0.5 sign(delta_y)
// otherwise; (0, 0) when delta_y == 0. Always consumes one draw so streams
// stay aligned across different p.
SimilaritySignal SignflipSimilarity(double delta_y, double p, SeededRng& rng);

// What an oracle sees of one observation.
struct OracleFrame {
  double progress = 0.0;
  const envs::ObservationRaster* image = nullptr;
};

class Oracle {
 public:
  virtual ~Oracle() = default;

  // True when Compare() needs frame images.
  virtual bool needs_images() const = 0;

  // Similarity of the change prev -> now; nullopt for no observable change.
  virtual std::optional<SimilaritySignal> Compare(const OracleFrame& now,
                                                  const OracleFrame& prev) = 0;
};

// Builds an oracle for one trial of `task`. The rng seeds the oracle's own
// stream. Remote oracles connect immediately (throws Transport).
std::unique_ptr<Oracle> MakeOracle(const OracleConfig& oracle_cfg,
                                   const envs::TaskConfig& task, SeededRng rng);

}  // namespace gradseek::similarity

#endif  // GRADSEEK_SIMILARITY_ORACLE_H_
