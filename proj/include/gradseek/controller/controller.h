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

#ifndef GRADSEEK_CONTROLLER_CONTROLLER_H_
#define GRADSEEK_CONTROLLER_CONTROLLER_H_

#include <deque>
#include <optional>

#include "gradseek/core/geometry.h"
#include "gradseek/core/rng.h"
#include "gradseek/similarity/features.h"

namespace gradseek::controller {

using similarity::SimilaritySignal;

// Where the even-step gradient comes from: the vision-language similarity
// difference, or the known-goal term (object displacement toward r_o).
enum class GradientSource { kSimilarity, kGoal };

struct ControllerConfig {
  double c = 0.2;                       // probe magnitude
  std::optional<AxisArray> c_per_axis;  // optional per-axis override of c
  double alpha = 1.0;
  double beta = 0.5;
  double epsilon = 1e-8;
  AxisArray lambda = {1.0, 1.0, 0.1};   // gradient clip bounds
  AxisMask axes = {true, true, true};
  bool approach_term = true;
  bool stuck_escape = true;
  double delta_e = 0.02;      // m, end effector travel threshold
  double delta_o = 0.05;      // m, handle displacement threshold
  double stuck_window = 1.0;  // s
  double escape_height = 0.05;  // m, z offset of the retarget
  GradientSource gradient = GradientSource::kSimilarity;
  Vec3 goal;  // r_o, used only by GradientSource::kGoal

  double ProbeMagnitude(int axis) const {
    return c_per_axis ? (*c_per_axis)[axis] : c;
  }
  // Throws InvalidArgument when a parameter is out of range.
  void Validate() const;
};

struct TracePoint {
  double time = 0.0;
  Vec3 position;
};

// Single-owner per trial. `t` counts issued control inputs; the latest
// observation is `cur_*`, the one before it `prev_*`.
struct ControllerState {
  int t = 0;
  AxisArray prev_pos{};
  AxisArray cur_pos{};
  Vec3 prev_obj;
  Vec3 cur_obj;
  Vec3 obj_initial;
  AxisArray v{};        // RMSprop accumulators, >= 0
  AxisArray last_dV{};  // final gradient of the latest even step
  std::deque<TracePoint> pos_trace;
  int observations = 0;
  int retarget_events = 0;  // rising edges of the stuck condition
  bool retargeting = false;

  // Records the observation taken after the latest input (or the initial
  // one). Keeps enough trace to cover `window` seconds.
  void Observe(const Vec3& robot, const Vec3& object, double time,
               double window);
};

// Axes with displacement below this carry no gradient.
inline constexpr double kMinDisplacement = 1e-9;

// dV_i = (r1 - r2) / dx_i; zero where |dx_i| < kMinDisplacement.
AxisArray SimilarityGradient(const SimilaritySignal& sig, const AxisArray& dx);

// dV_i -= ((o_i[t] - x_i[t])^2 - (o_i[t-1] - x_i[t-1])^2) / (x_i[t] - x_i[t-1])
// with degenerate denominators contributing 0.
AxisArray AugmentApproach(const AxisArray& dV, const AxisArray& robot_prev,
                          const AxisArray& robot_now, const Vec3& obj_prev,
                          const Vec3& obj_now);
AxisArray AugmentApproach(const AxisArray& dV, const ControllerState& state);

// Known-goal gradient: -((r_i - o_i[t])^2 - (r_i - o_i[t-1])^2) /
// (o_i[t] - o_i[t-1]); zero where the object did not move along i.
AxisArray GoalGradient(const Vec3& goal, const Vec3& obj_prev,
                       const Vec3& obj_now);

AxisArray ClipGradient(const AxisArray& dV, const AxisArray& lambda);

struct RmspropResult {
  double f = 0.0;
  double v = 0.0;
};

// v = beta v_prev + (1 - beta) dV^2; f = alpha dV / (sqrt(v) + epsilon).
RmspropResult RmspropStep(double dV, double v_prev, const ControllerConfig& cfg);

// Path length of the robot over the trailing window; nullopt while the
// trace does not yet span the window.
std::optional<double> TrailingTravel(const std::deque<TracePoint>& trace,
                                     double window);

// x_o[t] + (0, 0, escape_height) when the end effector travelled less than
// delta_e over the window while the handle stayed within delta_o of its
// start; x_o[t] otherwise.
Vec3 StuckEscape(const ControllerState& state, const ControllerConfig& cfg);

// Issues input t = state.t + 1. Odd t: u_i = c_i * Delta_i with Delta_i
// drawn per axis. Even t: u_i = f(dV_i) with dV from the similarity (or
// goal) gradient over the preceding probe, then the approach term, then
// clipping, then RMSprop. A missing signal on an even step counts as
// r1 = r2. Inactive axes get 0 and draw nothing from the accumulators.
AxisArray ControlInput(ControllerState& state,
                       const std::optional<SimilaritySignal>& sig,
                       const ControllerConfig& cfg, SeededRng& rng);

}  // namespace gradseek::controller

#endif  // GRADSEEK_CONTROLLER_CONTROLLER_H_
