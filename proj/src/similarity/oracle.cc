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

#include "gradseek/similarity/oracle.h"

#include <cmath>
#include <string>

#include "gradseek/core/error.h"
#include "gradseek/similarity/remote.h"

namespace gradseek::similarity {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class NoiseOracle final : public Oracle {
 public:
  NoiseOracle(NoiseOracleParams params, envs::TaskId task, SeededRng rng)
      : params_(params),
        task_(task),
        texts_(SyntheticTextFeatures(task, params.dim)),
        rng_(rng) {}

  bool needs_images() const override { return false; }

  std::optional<SimilaritySignal> Compare(const OracleFrame& now,
                                          const OracleFrame& prev) override {
    const FeatureVector h_prev =
        SyntheticEmbedProgress(prev.progress, task_, params_, rng_);
    const FeatureVector h_now =
        SyntheticEmbedProgress(now.progress, task_, params_, rng_);
    return DirectionSimilarity(h_now, h_prev, texts_);
  }

 private:
  NoiseOracleParams params_;
  envs::TaskId task_;
  TextFeatures texts_;
  SeededRng rng_;
};

class SignflipOracle final : public Oracle {
 public:
  SignflipOracle(SignflipOracleParams params, SeededRng rng)
      : params_(params), rng_(rng) {}

  bool needs_images() const override { return false; }

  std::optional<SimilaritySignal> Compare(const OracleFrame& now,
                                          const OracleFrame& prev) override {
    return SignflipSimilarity(now.progress - prev.progress, params_.accuracy,
                              rng_);
  }

 private:
  SignflipOracleParams params_;
  SeededRng rng_;
};

class RemoteOracle final : public Oracle {
 public:
  RemoteOracle(const RemoteOracleParams& params, const envs::TaskConfig& task)
      : client_(BridgeClient::Connect(params.endpoint)) {
    texts_.g1 = client_.EmbedText(task.texts.instruction);
    texts_.g2 = client_.EmbedText(task.texts.opposite);
  }

  bool needs_images() const override { return true; }

  std::optional<SimilaritySignal> Compare(const OracleFrame& now,
                                          const OracleFrame& prev) override {
    if (now.image == nullptr || prev.image == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "remote oracle requires observation images");
    }
    const FeatureVector h_prev = client_.EmbedImage(*prev.image);
    const FeatureVector h_now = client_.EmbedImage(*now.image);
    return DirectionSimilarity(h_now, h_prev, texts_);
  }

 private:
  BridgeClient client_;
  TextFeatures texts_;
};

}  // namespace

OracleConfig OracleConfig::Noise(double noise_scale, int dim) {
  return {NoiseOracleParams{noise_scale, dim}};
}

OracleConfig OracleConfig::Signflip(double accuracy) {
  return {SignflipOracleParams{accuracy}};
}

OracleConfig OracleConfig::Remote(std::string endpoint) {
  return {RemoteOracleParams{std::move(endpoint)}};
}

OracleKind OracleConfig::kind() const {
  return std::visit(
      Overloaded{
          [](const NoiseOracleParams&) { return OracleKind::kSyntheticNoise; },
          [](const SignflipOracleParams&) {
            return OracleKind::kSyntheticSignflip;
          },
          [](const RemoteOracleParams&) { return OracleKind::kRemote; },
      },
      params);
}

void OracleConfig::Validate() const {
  std::visit(
      Overloaded{
          [](const NoiseOracleParams& p) {
            if (!(p.noise_scale >= 0.0) || !std::isfinite(p.noise_scale)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "noise scale must be finite and >= 0");
            }
            if (p.dim < 2) {
              throw Error(ErrorCode::kInvalidArgument,
                          "synthetic feature dim must be >= 2");
            }
          },
          [](const SignflipOracleParams& p) {
            if (!(p.accuracy >= 0.5 && p.accuracy <= 1.0)) {
              throw Error(ErrorCode::kInvalidArgument,
                          "signflip accuracy must lie in [0.5, 1]");
            }
          },
          [](const RemoteOracleParams& p) {
            if (p.endpoint.empty()) {
              throw Error(ErrorCode::kInvalidArgument,
                          "remote oracle needs an endpoint");
            }
          },
      },
      params);
}

std::string_view OracleKindName(OracleKind kind) {
  switch (kind) {
    case OracleKind::kSyntheticNoise: return "noise";
    case OracleKind::kSyntheticSignflip: return "signflip";
    case OracleKind::kRemote: return "remote";
  }
  return "unknown";
}

FeatureVector SyntheticTextAxis(envs::TaskId task, int dim) {
  FeatureVector u;
  u.values.assign(static_cast<size_t>(dim), 0.0);
  u.values[static_cast<size_t>(task) % u.values.size()] = 1.0;
  return u;
}

TextFeatures SyntheticTextFeatures(envs::TaskId task, int dim) {
  TextFeatures texts;
  texts.g1 = SyntheticTextAxis(task, dim);
  texts.g2 = texts.g1;
  for (double& v : texts.g2.values) v = -v;
  return texts;
}

FeatureVector SyntheticEmbedProgress(double progress, envs::TaskId task,
                                     const NoiseOracleParams& params,
                                     SeededRng& rng) {
  FeatureVector h = SyntheticTextAxis(task, params.dim);
  for (double& v : h.values) {
    v = v * progress + params.noise_scale * rng.Normal();
  }
  return h;
}

FeatureVector SyntheticEmbed(const envs::SceneState& scene,
                             const envs::TaskConfig& task,
                             const OracleConfig& oracle_cfg, SeededRng& rng) {
  const auto* params = std::get_if<NoiseOracleParams>(&oracle_cfg.params);
  if (params == nullptr) {
    throw Error(ErrorCode::kWrongOracleKind,
                std::string("synthetic embedding needs a noise oracle, got ") +
                    std::string(OracleKindName(oracle_cfg.kind())));
  }
  return SyntheticEmbedProgress(envs::Progress(scene), task.id, *params, rng);
}

SimilaritySignal SignflipSimilarity(double delta_y, double p, SeededRng& rng) {
  const bool truthful = rng.Uniform() < p;
  if (delta_y == 0.0) return {0.0, 0.0};
  const double sign = (delta_y > 0.0 ? 1.0 : -1.0) * (truthful ? 1.0 : -1.0);
  return {0.25 * sign, -0.25 * sign};
}

std::unique_ptr<Oracle> MakeOracle(const OracleConfig& oracle_cfg,
                                   const envs::TaskConfig& task, SeededRng rng) {
  oracle_cfg.Validate();
  return std::visit(
      Overloaded{
          [&](const NoiseOracleParams& p) -> std::unique_ptr<Oracle> {
            return std::make_unique<NoiseOracle>(p, task.id, rng);
          },
          [&](const SignflipOracleParams& p) -> std::unique_ptr<Oracle> {
            return std::make_unique<SignflipOracle>(p, rng);
          },
          [&](const RemoteOracleParams& p) -> std::unique_ptr<Oracle> {
            return std::make_unique<RemoteOracle>(p, task);
          },
      },
      oracle_cfg.params);
}

}  // namespace gradseek::similarity
