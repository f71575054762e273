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

#include "gradseek/harness/collection.h"

#include <utility>
#include <vector>

#include "gradseek/harness/trial.h"

namespace gradseek::harness {

datagen::EpisodeFrameSource::Generator ControllerEpisodes(
    envs::TaskConfig task, controller::ControllerConfig ctrl, uint64_t seed) {
  return [task = std::move(task), ctrl = std::move(ctrl), seed](int episode) {
    std::vector<envs::SceneState> scenes;
    TrialOptions options;
    options.on_scene = [&scenes](const envs::SceneState& s) {
      scenes.push_back(s);
    };
    RunTrial(task, ctrl, Method::FromOracle(similarity::OracleConfig::Signflip(1.0)),
             seed + static_cast<uint64_t>(episode), options);
    return scenes;
  };
}

}  // namespace gradseek::harness
