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

#include "gradseek/harness/trial.h"

#include <cstdio>

#include "gradseek/core/error.h"
#include "gradseek/core/hash.h"
#include "gradseek/envs/render.h"
#include "gradseek/envs/scene.h"

namespace gradseek::harness {
namespace {

using controller::ControllerConfig;
using controller::ControllerState;
using controller::GradientSource;

// Stream ids separating the independent random sources of one trial.
constexpr uint64_t kInitStream = 1;
constexpr uint64_t kControlStream = 2;
constexpr uint64_t kOracleStream = 3;

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void HashPoint(Fnv1a& h, const TrajectoryPoint& p) {
  h.Update(static_cast<uint64_t>(p.t));
  for (double v : {p.robot.position.x, p.robot.position.y, p.robot.position.z,
                   p.robot.heading, p.object.x, p.object.y, p.object.z, p.u[0],
                   p.u[1], p.u[2], p.r1, p.r2}) {
    h.Update(v);
  }
}

struct Frame {
  double progress = 0.0;
  std::optional<envs::ObservationRaster> image;

  similarity::OracleFrame view() const {
    return {progress, image ? &*image : nullptr};
  }
};

}  // namespace

Method Method::Goal() {
  Method m;
  m.gradient = GradientSource::kGoal;
  m.label = "goal";
  return m;
}

Method Method::FromOracle(similarity::OracleConfig oracle) {
  Method m;
  m.oracle = std::move(oracle);
  m.label = DefaultMethodLabel(m);
  return m;
}

std::string DefaultMethodLabel(const Method& method) {
  if (method.gradient == GradientSource::kGoal) return "goal";
  if (const auto* p =
          std::get_if<similarity::SignflipOracleParams>(&method.oracle.params)) {
    return "signflip(p=" + FormatNumber(p->accuracy) + ")";
  }
  if (const auto* p =
          std::get_if<similarity::NoiseOracleParams>(&method.oracle.params)) {
    return "noise(sigma=" + FormatNumber(p->noise_scale) + ")";
  }
  return "remote";
}

ControllerConfig DefaultControllerConfig(envs::TaskId id) {
  ControllerConfig cfg;
  if (envs::IsArticulated(id)) return cfg;
  cfg.axes = {true, true, false};
  cfg.approach_term = false;
  cfg.stuck_escape = false;
  cfg.lambda = {1.0, 1.0, 1.0};
  cfg.c = id == envs::TaskId::kChairRearrangement ? 0.1 : 0.02;
  return cfg;
}

TrialRecord RunTrial(const envs::TaskConfig& task, const ControllerConfig& ctrl,
                     const Method& method, uint64_t seed,
                     const TrialOptions& options) {
  TrialRecord record;
  record.task_id = task.id;
  record.seed = seed;
  record.init_seed = options.init_seed.value_or(seed);
  record.method = method.label.empty() ? DefaultMethodLabel(method) : method.label;

  ControllerConfig cfg = ctrl;
  cfg.Validate();
  if (method.gradient == GradientSource::kGoal) {
    cfg.gradient = GradientSource::kGoal;
    cfg.goal = task.target;
  }

  SeededRng init_rng(record.init_seed, kInitStream);
  SeededRng control_rng(seed, kControlStream);
  envs::SceneState scene = envs::SampleInitialState(task, init_rng);

  Fnv1a hash;
  std::vector<TrajectoryPoint> trajectory;
  ControllerState state;
  state.Observe(scene.robot.position, scene.object, scene.time,
                cfg.stuck_window);
  if (options.on_scene) options.on_scene(scene);

  try {
    std::unique_ptr<similarity::Oracle> oracle;
    if (cfg.gradient == GradientSource::kSimilarity) {
      oracle = similarity::MakeOracle(method.oracle, task,
                                      SeededRng(seed, kOracleStream));
    }
    const bool need_images = oracle && oracle->needs_images();
    auto make_frame = [&](const envs::SceneState& s) {
      Frame f{envs::Progress(s), std::nullopt};
      if (need_images) f.image = envs::RenderObservation(s, task);
      return f;
    };

    // frames[0] = o_{t-2}, frames[1] = o_{t-1} when t is even.
    Frame before_probe = make_frame(scene);
    Frame after_probe;
    bool success = envs::CheckSuccess(scene, task);
    int t = 0;
    while (!success && t < task.max_steps) {
      ++t;
      std::optional<similarity::SimilaritySignal> sig;
      if (t % 2 == 0 && oracle) {
        sig = oracle->Compare(after_probe.view(), before_probe.view());
      }
      const AxisArray u = controller::ControlInput(state, sig, cfg, control_rng);
      scene = envs::Step(scene, task, u);
      state.Observe(scene.robot.position, scene.object, scene.time,
                    cfg.stuck_window);
      if (options.on_scene) options.on_scene(scene);
      if (oracle) {
        // After a probe we need this frame as "now"; after a step it is the
        // "before" of the next probe.
        if (t % 2 == 1) {
          after_probe = make_frame(scene);
        } else {
          before_probe = make_frame(scene);
        }
      }

      TrajectoryPoint point{t, scene.robot, scene.object, u,
                            sig ? sig->r1 : 0.0, sig ? sig->r2 : 0.0};
      HashPoint(hash, point);
      if (options.record_trajectory) trajectory.push_back(point);
      success = envs::CheckSuccess(scene, task);
    }
    record.success = success;
    record.steps_used = t;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kTransport:
      case ErrorCode::kProtocol:
      case ErrorCode::kService:
      case ErrorCode::kZeroNorm:
      case ErrorCode::kDimMismatch:
        record.errored = true;
        record.error = e.what();
        record.steps_used = state.t;
        break;
      default:
        throw;
    }
  }
  record.final_distance = envs::FinalDistance(scene, task);
  record.retarget_events = state.retarget_events;
  record.trajectory_hash = hash.Hex();
  if (options.record_trajectory) record.trajectory = std::move(trajectory);
  return record;
}

}  // namespace gradseek::harness
