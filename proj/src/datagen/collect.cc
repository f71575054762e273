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

#include "gradseek/datagen/collect.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gradseek::datagen {
namespace {

constexpr int kMaxLegSteps = 400;

AxisArray ScaledToward(const Vec3& from, const Vec3& to, double scale,
                       double max_units) {
  AxisArray u = ToAxisArray((1.0 / scale) * (to - from));
  for (double& a : u) a = std::clamp(a, -max_units, max_units);
  return u;
}

void SweepArticulated(const envs::TaskConfig& task, SeededRng& rng, int legs,
                      std::vector<envs::SceneState>& out) {
  const envs::Articulation& joint = task.articulation;
  const double reach = 0.5 * task.contact_radius;
  for (int i = 0; i < kMaxLegSteps; ++i) {
    const envs::SceneState& s = out.back();
    if (Distance(s.robot.position, s.object) <= reach) break;
    const AxisArray u = ScaledToward(s.robot.position, s.object,
                                     task.action_scale, rng.Uniform(0.5, 1.0));
    out.push_back(envs::Step(s, task, u));
  }
  const double unit =
      joint.kind == envs::ArticulationKind::kHinge ? 1.0 / joint.radius : 1.0;
  for (int leg = 0; leg < legs; ++leg) {
    const double goal = rng.Uniform(joint.q_min, joint.q_max);
    double last_q = out.back().articulation_q;
    int stalled = 0;
    for (int i = 0; i < kMaxLegSteps && stalled < 20; ++i) {
      const envs::SceneState& s = out.back();
      const double remaining = goal - s.articulation_q;
      if (std::abs(remaining) < 1e-4) break;
      const double dq = std::copysign(
          std::min(std::abs(remaining), rng.Uniform(0.002, 0.01) * unit),
          remaining);
      const Vec3 delta = HandlePosition(joint, s.articulation_q + dq) -
                         HandlePosition(joint, s.articulation_q);
      // Track the handle so contact is kept through the sweep.
      const Vec3 correction = 0.5 * (s.object - s.robot.position);
      AxisArray u = ToAxisArray((1.0 / task.action_scale) * (delta + correction));
      out.push_back(envs::Step(s, task, u));
      stalled = std::abs(out.back().articulation_q - last_q) < 1e-9 ? stalled + 1
                                                                   : 0;
      last_q = out.back().articulation_q;
    }
  }
}

void SweepRearrangement(const envs::TaskConfig& task, SeededRng& rng, int legs,
                        std::vector<envs::SceneState>& out) {
  const envs::Box3 area{0.8 * task.workspace.lo, 0.8 * task.workspace.hi};
  for (int leg = 0; leg < legs; ++leg) {
    Vec3 waypoint;
    if (rng.Uniform() < 0.5) {
      waypoint = task.target + Vec3{rng.Uniform(-0.05, 0.05),
                                    rng.Uniform(-0.05, 0.05), 0.0};
    } else {
      waypoint = {rng.Uniform(area.lo.x, area.hi.x),
                  rng.Uniform(area.lo.y, area.hi.y), 0.0};
    }
    waypoint = task.workspace.Clamp(waypoint);
    waypoint.z = 0.0;
    const double speed = rng.Uniform(0.3, 1.0);
    for (int i = 0; i < kMaxLegSteps; ++i) {
      const envs::SceneState& s = out.back();
      if (Distance(s.robot.position, waypoint) < 0.02) break;
      AxisArray u =
          ScaledToward(s.robot.position, waypoint, task.action_scale, speed);
      u[2] = 0.0;
      out.push_back(envs::Step(s, task, u));
    }
  }
}

}  // namespace

VectorFrameSource::VectorFrameSource(envs::TaskId task, std::vector<Item> items)
    : task_(task), items_(std::move(items)) {}

std::optional<double> VectorFrameSource::NextProgress() {
  if (next_ >= items_.size()) return std::nullopt;
  return items_[next_++].y;
}

envs::ObservationRaster VectorFrameSource::RenderCurrent() {
  return items_.at(next_ - 1).image;
}

SceneFrameSource::SceneFrameSource(envs::TaskConfig task,
                                   std::vector<envs::SceneState> scenes,
                                   envs::RenderOptions options)
    : task_(std::move(task)), scenes_(std::move(scenes)), options_(options) {}

std::optional<double> SceneFrameSource::NextProgress() {
  if (next_ >= scenes_.size()) return std::nullopt;
  return datagen::Progress(scenes_[next_++]);
}

envs::ObservationRaster SceneFrameSource::RenderCurrent() {
  return envs::RenderObservation(scenes_.at(next_ - 1), task_, options_);
}

EpisodeFrameSource::EpisodeFrameSource(envs::TaskConfig task, Generator generator,
                                       int max_episodes,
                                       envs::RenderOptions options)
    : task_(std::move(task)),
      generator_(std::move(generator)),
      max_episodes_(max_episodes),
      options_(options) {}

std::optional<double> EpisodeFrameSource::NextProgress() {
  while (next_ >= scenes_.size()) {
    if (episode_ >= max_episodes_) return std::nullopt;
    scenes_ = generator_(episode_++);
    next_ = 0;
  }
  return datagen::Progress(scenes_[next_++]);
}

envs::ObservationRaster EpisodeFrameSource::RenderCurrent() {
  return envs::RenderObservation(scenes_.at(next_ - 1), task_, options_);
}

StreamExhausted::StreamExhausted(std::vector<Sample> partial)
    : Error(ErrorCode::kStreamExhausted,
            "frame stream ended after " + std::to_string(partial.size()) +
                " samples"),
      partial_(std::move(partial)) {}

ProgressGate::ProgressGate(double delta_y, GateReference reference)
    : delta_y_(delta_y), reference_(reference) {}

bool ProgressGate::Offer(double y) {
  bool take;
  if (!last_collected_) {
    take = true;
  } else if (reference_ == GateReference::kLastCollected) {
    take = std::abs(y - *last_collected_) > delta_y_;
  } else {
    take = std::abs(y - *last_frame_) > delta_y_;
  }
  last_frame_ = y;
  if (take) last_collected_ = y;
  return take;
}

std::vector<Sample> GatedCollect(FrameSource& source,
                                 const GateOptions& options) {
  if (options.max_samples < 2 || !(options.delta_y > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gate needs M >= 2 and delta_y > 0");
  }
  ProgressGate gate(options.delta_y, options.reference);
  std::vector<Sample> samples;
  int k = -1;
  while (static_cast<int>(samples.size()) < options.max_samples) {
    const std::optional<double> y = source.NextProgress();
    if (!y) throw StreamExhausted(std::move(samples));
    ++k;
    if (!gate.Offer(*y)) continue;
    Sample sample;
    sample.task = source.task();
    sample.k = k;
    sample.y = *y;
    sample.image = source.RenderCurrent();
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::vector<envs::SceneState> ScriptedSweep(const envs::TaskConfig& task,
                                            SeededRng& rng, int legs) {
  std::vector<envs::SceneState> scenes{envs::SampleInitialState(task, rng)};
  if (envs::IsArticulated(task.id)) {
    SweepArticulated(task, rng, legs, scenes);
  } else {
    SweepRearrangement(task, rng, legs, scenes);
  }
  return scenes;
}

EpisodeFrameSource::Generator ScriptedEpisodes(envs::TaskConfig task,
                                               uint64_t seed, int legs) {
  return [task = std::move(task), seed, legs](int episode) {
    SeededRng rng(seed, static_cast<uint64_t>(episode));
    return ScriptedSweep(task, rng, legs);
  };
}

}  // namespace gradseek::datagen
