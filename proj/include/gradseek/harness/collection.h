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

#ifndef GRADSEEK_HARNESS_COLLECTION_H_
#define GRADSEEK_HARNESS_COLLECTION_H_

#include <cstdint>

#include "gradseek/controller/controller.h"
#include "gradseek/datagen/collect.h"
#include "gradseek/envs/task.h"

namespace gradseek::harness {

// Episode generator that runs the controller with the perfect signflip
// oracle, trial seed = seed + episode, and yields every scene visited.
datagen::EpisodeFrameSource::Generator ControllerEpisodes(
    envs::TaskConfig task, controller::ControllerConfig ctrl, uint64_t seed);

}  // namespace gradseek::harness

#endif  // GRADSEEK_HARNESS_COLLECTION_H_
