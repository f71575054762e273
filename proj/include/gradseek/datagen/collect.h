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

#ifndef GRADSEEK_DATAGEN_COLLECT_H_
#define GRADSEEK_DATAGEN_COLLECT_H_

#include <functional>
#include <optional>
#include <vector>

#include "gradseek/core/error.h"
#include "gradseek/core/rng.h"
#include "gradseek/datagen/sample.h"

namespace gradseek::datagen {

// Stream of frames. Rendering is deferred so only collected frames pay for
// rasterization.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual envs::TaskId task() const = 0;
  // Advances to the next frame; nullopt at the end of the stream.
  virtual std::optional<double> NextProgress() = 0;
  // Image of the frame last returned by NextProgress().
  virtual envs::ObservationRaster RenderCurrent() = 0;
};

// Frames given up front (tests, replays).
class VectorFrameSource final : public FrameSource {
 public:
  struct Item {
    double y = 0.0;
    envs::ObservationRaster image;
  };
  VectorFrameSource(envs::TaskId task, std::vector<Item> items);

  envs::TaskId task() const override { return task_; }
  std::optional<double> NextProgress() override;
  envs::ObservationRaster RenderCurrent() override;

 private:
  envs::TaskId task_;
  std::vector<Item> items_;
  size_t next_ = 0;
};

// Frames from a scene trajectory, rendered on demand.
class SceneFrameSource final : public FrameSource {
 public:
  SceneFrameSource(envs::TaskConfig task, std::vector<envs::SceneState> scenes,
                   envs::RenderOptions options = {});

  envs::TaskId task() const override { return task_.id; }
  std::optional<double> NextProgress() override;
  envs::ObservationRaster RenderCurrent() override;

 private:
  envs::TaskConfig task_;
  std::vector<envs::SceneState> scenes_;
  envs::RenderOptions options_;
  size_t next_ = 0;
};

// Frames from a sequence of episodes produced on demand; each episode is a
// scene trajectory. Ends after `max_episodes`.
class EpisodeFrameSource final : public FrameSource {
 public:
  using Generator = std::function<std::vector<envs::SceneState>(int episode)>;
  EpisodeFrameSource(envs::TaskConfig task, Generator generator, int max_episodes,
                     envs::RenderOptions options = {});

  envs::TaskId task() const override { return task_.id; }
  std::optional<double> NextProgress() override;
  envs::ObservationRaster RenderCurrent() override;
  int episodes_started() const { return episode_; }

 private:
  envs::TaskConfig task_;
  Generator generator_;
  int max_episodes_;
  envs::RenderOptions options_;
  int episode_ = 0;
  std::vector<envs::SceneState> scenes_;
  size_t next_ = 0;
};

// Which y the gate compares against.
enum class GateReference {
  kLastCollected,  // |y[k] - y of the last collected sample| > delta_y
  kPreviousFrame,  // |y[k] - y[k-1]| > delta_y, the frame-to-frame reading
};

struct GateOptions {
  double delta_y = 0.01;
  int max_samples = 2;  // M; at least 2
  GateReference reference = GateReference::kLastCollected;
};

// Raised when the stream ends before M samples; keeps what was collected.
class StreamExhausted : public Error {
 public:
  explicit StreamExhausted(std::vector<Sample> partial);
  const std::vector<Sample>& partial() const { return partial_; }
  size_t collected() const { return partial_.size(); }

 private:
  std::vector<Sample> partial_;
};

// Collects the first frame as a baseline, then every frame passing the
// gate, stopping at exactly M samples. Sample k is the frame's stream index.
std::vector<Sample> GatedCollect(FrameSource& source, const GateOptions& options);

// Incremental form of the gate for callers that drive their own loop.
class ProgressGate {
 public:
  explicit ProgressGate(double delta_y,
                        GateReference reference = GateReference::kLastCollected);
  // Whether the frame with progress y is collected; updates the reference.
  bool Offer(double y);

 private:
  double delta_y_;
  GateReference reference_;
  std::optional<double> last_collected_;
  std::optional<double> last_frame_;
};

// Scripted analogue of manual data collection: the robot reaches the handle
// and drives the joint between random targets (articulated tasks), or
// pushes the object through random waypoints (rearrangement tasks).
// Returns every scene visited, initial scene first.
std::vector<envs::SceneState> ScriptedSweep(const envs::TaskConfig& task,
                                            SeededRng& rng, int legs = 6);

// Episode generator running ScriptedSweep with the rng (seed, episode).
EpisodeFrameSource::Generator ScriptedEpisodes(envs::TaskConfig task,
                                               uint64_t seed, int legs = 6);

}  // namespace gradseek::datagen

#endif  // GRADSEEK_DATAGEN_COLLECT_H_
