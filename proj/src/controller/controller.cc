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

#include "gradseek/controller/controller.h"

#include <algorithm>
#include <cmath>

#include "gradseek/core/error.h"

namespace gradseek::controller {
namespace {

constexpr double kTimeSlack = 1e-9;

}  // namespace

void ControllerConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(c > 0.0, "c must be > 0");
  if (c_per_axis) {
    for (int i = 0; i < kNumAxes; ++i) {
      require(!axes[i] || (*c_per_axis)[i] > 0.0, "per-axis c must be > 0");
    }
  }
  require(alpha > 0.0, "alpha must be > 0");
  require(beta >= 0.0 && beta < 1.0, "beta must lie in [0, 1)");
  require(epsilon > 0.0, "epsilon must be > 0");
  for (int i = 0; i < kNumAxes; ++i) {
    require(!axes[i] || lambda[i] > 0.0, "lambda must be > 0 on active axes");
  }
  require(delta_e > 0.0 && delta_o > 0.0, "stuck thresholds must be > 0");
  require(stuck_window > 0.0, "stuck window must be > 0");
}

void ControllerState::Observe(const Vec3& robot, const Vec3& object,
                              double time, double window) {
  if (observations == 0) {
    prev_pos = cur_pos = ToAxisArray(robot);
    prev_obj = cur_obj = obj_initial = object;
  } else {
    prev_pos = cur_pos;
    prev_obj = cur_obj;
    cur_pos = ToAxisArray(robot);
    cur_obj = object;
  }
  ++observations;
  pos_trace.push_back({time, robot});
  while (pos_trace.size() >= 2 &&
         pos_trace[1].time <= time - window + kTimeSlack) {
    pos_trace.pop_front();
  }
}

AxisArray SimilarityGradient(const SimilaritySignal& sig, const AxisArray& dx) {
  AxisArray dV{};
  for (int i = 0; i < kNumAxes; ++i) {
    if (std::abs(dx[i]) >= kMinDisplacement) dV[i] = sig.difference() / dx[i];
  }
  return dV;
}

AxisArray AugmentApproach(const AxisArray& dV, const AxisArray& robot_prev,
                          const AxisArray& robot_now, const Vec3& obj_prev,
                          const Vec3& obj_now) {
  AxisArray out = dV;
  for (int i = 0; i < kNumAxes; ++i) {
    const double den = robot_now[i] - robot_prev[i];
    if (std::abs(den) < kMinDisplacement) continue;
    const double gap_now = obj_now[i] - robot_now[i];
    const double gap_prev = obj_prev[i] - robot_prev[i];
    out[i] -= (gap_now * gap_now - gap_prev * gap_prev) / den;
  }
  return out;
}

AxisArray AugmentApproach(const AxisArray& dV, const ControllerState& state) {
  return AugmentApproach(dV, state.prev_pos, state.cur_pos, state.prev_obj,
                         state.cur_obj);
}

AxisArray GoalGradient(const Vec3& goal, const Vec3& obj_prev,
                       const Vec3& obj_now) {
  AxisArray dV{};
  for (int i = 0; i < kNumAxes; ++i) {
    const double den = obj_now[i] - obj_prev[i];
    if (std::abs(den) < kMinDisplacement) continue;
    const double gap_now = goal[i] - obj_now[i];
    const double gap_prev = goal[i] - obj_prev[i];
    dV[i] = -(gap_now * gap_now - gap_prev * gap_prev) / den;
  }
  return dV;
}

AxisArray ClipGradient(const AxisArray& dV, const AxisArray& lambda) {
  AxisArray out{};
  for (int i = 0; i < kNumAxes; ++i) {
    out[i] = std::clamp(dV[i], -lambda[i], lambda[i]);
  }
  return out;
}

RmspropResult RmspropStep(double dV, double v_prev,
                          const ControllerConfig& cfg) {
  RmspropResult r;
  r.v = cfg.beta * v_prev + (1.0 - cfg.beta) * dV * dV;
  r.f = cfg.alpha * dV / (std::sqrt(r.v) + cfg.epsilon);
  return r;
}

std::optional<double> TrailingTravel(const std::deque<TracePoint>& trace,
                                     double window) {
  if (trace.empty() ||
      trace.front().time > trace.back().time - window + kTimeSlack) {
    return std::nullopt;
  }
  double travel = 0.0;
  for (size_t k = 1; k < trace.size(); ++k) {
    travel += Distance(trace[k].position, trace[k - 1].position);
  }
  return travel;
}

Vec3 StuckEscape(const ControllerState& state, const ControllerConfig& cfg) {
  const std::optional<double> travel =
      TrailingTravel(state.pos_trace, cfg.stuck_window);
  if (travel && *travel < cfg.delta_e &&
      Distance(state.cur_obj, state.obj_initial) < cfg.delta_o) {
    return state.cur_obj + Vec3{0.0, 0.0, cfg.escape_height};
  }
  return state.cur_obj;
}

AxisArray ControlInput(ControllerState& state,
                       const std::optional<SimilaritySignal>& sig,
                       const ControllerConfig& cfg, SeededRng& rng) {
  ++state.t;
  AxisArray u{};
  if (state.t % 2 == 1) {
    for (int i = 0; i < kNumAxes; ++i) {
      const int delta = rng.Rademacher();
      if (cfg.axes[i]) u[i] = cfg.ProbeMagnitude(i) * delta;
    }
    return u;
  }

  AxisArray dx{};
  for (int i = 0; i < kNumAxes; ++i) dx[i] = state.cur_pos[i] - state.prev_pos[i];

  AxisArray dV = cfg.gradient == GradientSource::kGoal
                     ? GoalGradient(cfg.goal, state.prev_obj, state.cur_obj)
                     : SimilarityGradient(sig.value_or(SimilaritySignal{}), dx);

  if (cfg.approach_term) {
    Vec3 obj_prev = state.prev_obj;
    Vec3 obj_now = state.cur_obj;
    if (cfg.stuck_escape) {
      const Vec3 offset = StuckEscape(state, cfg) - state.cur_obj;
      const bool stuck = offset != Vec3{};
      if (stuck && !state.retargeting) ++state.retarget_events;
      state.retargeting = stuck;
      obj_prev += offset;
      obj_now += offset;
    }
    dV = AugmentApproach(dV, state.prev_pos, state.cur_pos, obj_prev, obj_now);
  }

  dV = ClipGradient(dV, cfg.lambda);
  for (int i = 0; i < kNumAxes; ++i) {
    if (!cfg.axes[i]) {
      dV[i] = 0.0;
      continue;
    }
    const RmspropResult r = RmspropStep(dV[i], state.v[i], cfg);
    state.v[i] = r.v;
    u[i] = r.f;
  }
  state.last_dV = dV;
  return u;
}

}  // namespace gradseek::controller
