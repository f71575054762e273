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

#include <cmath>

#include "gradseek/controller/controller.h"
#include "gradseek/core/error.h"
#include "gradseek/core/rng.h"
#include "gradseek/similarity/oracle.h"
#include "gtest/gtest.h"

namespace gradseek::controller {
namespace {

constexpr double kTol = 1e-9;

TEST(SimilarityGradientTest, Examples) {
  const AxisArray dV = SimilarityGradient({0.7, 0.3}, {0.2, 0.2, 0.2});
  for (double d : dV) EXPECT_NEAR(d, 2.0, kTol);
  EXPECT_EQ(SimilarityGradient({0.4, 0.4}, {0.2, -0.2, 0.2}), (AxisArray{0, 0, 0}));
  const AxisArray z = SimilarityGradient({0.6, 0.1}, {0.2, -0.1, 0.0});
  EXPECT_EQ(z[2], 0.0);
  EXPECT_NEAR(z[0], 2.5, kTol);
  EXPECT_NEAR(z[1], -5.0, kTol);
}

TEST(AugmentApproachTest, MovingTowardStaticObjectIsPositive) {
  const Vec3 obj{0.5, 0.0, 0.0};
  const AxisArray out =
      AugmentApproach({0, 0, 0}, {0.0, 0, 0}, {0.1, 0, 0}, obj, obj);
  EXPECT_GT(out[0], 0.0);
  // -((0.4)^2 - (0.5)^2) / 0.1
  EXPECT_NEAR(out[0], 0.9, kTol);
  EXPECT_EQ(out[1], 0.0);
}

TEST(AugmentApproachTest, SymmetricStraddleIsZero) {
  const Vec3 obj{0.3, 0.0, 0.0};
  const AxisArray out =
      AugmentApproach({0.25, 0, 0}, {0.2, 0, 0}, {0.4, 0, 0}, obj, obj);
  EXPECT_NEAR(out[0], 0.25, kTol);
}

TEST(AugmentApproachTest, MatchesCentralDifference) {
  SeededRng rng(12, 0);
  const double h = 1e-4;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 obj{rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1)};
    const AxisArray x{rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1)};
    AxisArray lo = x, hi = x;
    for (int k = 0; k < 3; ++k) {
      lo[k] -= h / 2;
      hi[k] += h / 2;
    }
    const AxisArray term = AugmentApproach({0, 0, 0}, lo, hi, obj, obj);
    for (int k = 0; k < 3; ++k) {
      auto f = [&](double xr) { return -(obj[k] - xr) * (obj[k] - xr); };
      const double numeric = (f(x[k] + h) - f(x[k] - h)) / (2 * h);
      EXPECT_NEAR(term[k], numeric, 1e-2 * std::max(1e-3, std::abs(numeric)));
    }
  }
}

TEST(AugmentApproachTest, DegenerateDenominatorContributesNothing) {
  const AxisArray out =
      AugmentApproach({1, 2, 3}, {0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, {}, {1, 1, 1});
  EXPECT_EQ(out, (AxisArray{1, 2, 3}));
}

TEST(GoalGradientTest, MatchesDefinition) {
  const Vec3 goal{0.5, 0.0, 0.2};
  const Vec3 prev{0.1, 0.1, 0.2};
  const Vec3 now{0.2, 0.05, 0.2};
  const AxisArray g = GoalGradient(goal, prev, now);
  EXPECT_NEAR(g[0], -((0.3 * 0.3) - (0.4 * 0.4)) / 0.1, kTol);
  EXPECT_NEAR(g[1], -((0.05 * 0.05) - (0.1 * 0.1)) / -0.05, kTol);
  EXPECT_EQ(g[2], 0.0);
  EXPECT_GT(g[0], 0.0);
  EXPECT_LT(g[1], 0.0);
}

TEST(ClipGradientTest, Examples) {
  EXPECT_DOUBLE_EQ(ClipGradient({3.7, 0, 0}, {1.0, 1.0, 1.0})[0], 1.0);
  EXPECT_DOUBLE_EQ(ClipGradient({-0.05, 0, 0}, {0.1, 1.0, 1.0})[0], -0.05);
  EXPECT_EQ(ClipGradient({2, -2, 2}, {1.0, 1.0, 0.1}), (AxisArray{1.0, -1.0, 0.1}));
}

TEST(ClipGradientTest, Idempotent) {
  SeededRng rng(2, 0);
  for (int i = 0; i < 10000; ++i) {
    const AxisArray dV{rng.Uniform(-5, 5), rng.Uniform(-5, 5), rng.Uniform(-5, 5)};
    const AxisArray lambda{rng.Uniform(0.01, 3), rng.Uniform(0.01, 3),
                           rng.Uniform(0.01, 3)};
    const AxisArray once = ClipGradient(dV, lambda);
    EXPECT_EQ(ClipGradient(once, lambda), once);
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(once[k]), lambda[k]);
  }
}

TEST(RmspropTest, Examples) {
  const ControllerConfig cfg;
  RmspropResult r = RmspropStep(2.0, 0.0, cfg);
  EXPECT_NEAR(r.v, 2.0, kTol);
  EXPECT_NEAR(r.f, 1.41421, 1e-5);
  EXPECT_NEAR(r.f, 2.0 / (std::sqrt(2.0) + 1e-8), kTol);
  r = RmspropStep(0.0, 0.6, cfg);
  EXPECT_EQ(r.f, 0.0);
  EXPECT_NEAR(r.v, 0.3, kTol);
}

TEST(RmspropTest, MagnitudeBound) {
  SeededRng rng(5, 0);
  ControllerConfig cfg;
  for (int i = 0; i < 100000; ++i) {
    cfg.alpha = rng.Uniform(0.1, 3.0);
    cfg.beta = rng.Uniform(0.0, 0.99);
    const double dV = rng.Uniform(-10, 10) * std::pow(10.0, rng.Uniform(-6, 3));
    const double v_prev = rng.Uniform(0, 10) * std::pow(10.0, rng.Uniform(-6, 3));
    const RmspropResult r = RmspropStep(dV, v_prev, cfg);
    EXPECT_LE(std::abs(r.f), cfg.alpha / std::sqrt(1 - cfg.beta) * (1 + 1e-12));
    EXPECT_GE(r.v, 0.0);
  }
}

TEST(ControllerConfigTest, Validate) {
  EXPECT_NO_THROW(ControllerConfig{}.Validate());
  ControllerConfig bad;
  bad.beta = 1.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = {};
  bad.c = 0.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = {};
  bad.lambda = {1, 1, 0};
  EXPECT_THROW(bad.Validate(), Error);
  bad.axes = {true, true, false};
  EXPECT_NO_THROW(bad.Validate());
}

// Drives a state by hand: observation, input, observation.
struct Harness {
  ControllerConfig cfg;
  ControllerState state;
  SeededRng rng{1, 2};
  double time = 0.0;

  void Observe(const Vec3& robot, const Vec3& obj) {
    state.Observe(robot, obj, time, cfg.stuck_window);
    time += 0.1;
  }
};

TEST(ControlInputTest, FirstStepIsProbe) {
  Harness h;
  h.Observe({0, 0, 0}, {1, 1, 1});
  const AxisArray u = ControlInput(h.state, std::nullopt, h.cfg, h.rng);
  for (double ui : u) EXPECT_EQ(std::abs(ui), 0.2);
  EXPECT_EQ(h.state.t, 1);
  EXPECT_EQ(h.state.v, (AxisArray{0, 0, 0}));
}

TEST(ControlInputTest, EqualSimilarityWithoutApproachGivesZero) {
  Harness h;
  h.cfg.approach_term = false;
  h.Observe({0, 0, 0}, {1, 1, 1});
  const AxisArray probe = ControlInput(h.state, std::nullopt, h.cfg, h.rng);
  h.Observe(ToVec3(probe), {1, 1, 1});
  const AxisArray u = ControlInput(h.state, similarity::SimilaritySignal{0.3, 0.3},
                                   h.cfg, h.rng);
  EXPECT_EQ(u, (AxisArray{0, 0, 0}));
  EXPECT_EQ(h.state.t, 2);
}

TEST(ControlInputTest, EvenStepFollowsPipeline) {
  Harness h;
  h.cfg.approach_term = false;
  h.Observe({0, 0, 0}, {});
  const AxisArray probe = ControlInput(h.state, std::nullopt, h.cfg, h.rng);
  h.Observe(ToVec3({0.002 * probe[0] / 0.2, 0.002 * probe[1] / 0.2, 0.0}), {});
  const AxisArray u = ControlInput(h.state, similarity::SimilaritySignal{0.25, -0.25},
                                   h.cfg, h.rng);
  // dV = 0.5 / +-0.002 clips to +-lambda; first RMSprop step gives
  // alpha * sign / sqrt(1 - beta).
  const double expected = 1.0 / (std::sqrt(0.5) + 1e-8);
  EXPECT_NEAR(u[0], probe[0] > 0 ? expected : -expected, kTol);
  EXPECT_NEAR(u[1], probe[1] > 0 ? expected : -expected, kTol);
  EXPECT_EQ(u[2], 0.0);
  EXPECT_EQ(h.state.v[2], 0.0);
}

TEST(ControlInputTest, InvariantsOverRandomRuns) {
  SeededRng oracle(3, 0);
  for (int run = 0; run < 50; ++run) {
    Harness h;
    h.rng = SeededRng(run, 2);
    h.cfg.axes = {true, run % 2 == 0, true};
    Vec3 robot{0, 0, 0};
    const Vec3 obj{0.3, -0.2, 0.1};
    h.Observe(robot, obj);
    AxisArray ever_nonzero{};
    for (int t = 1; t <= 400; ++t) {
      std::optional<similarity::SimilaritySignal> sig;
      if (t % 2 == 0) {
        sig = similarity::SimilaritySignal{oracle.Uniform(-1, 1), oracle.Uniform(-1, 1)};
      }
      const AxisArray u = ControlInput(h.state, sig, h.cfg, h.rng);
      for (int i = 0; i < 3; ++i) {
        if (!h.cfg.axes[i]) {
          EXPECT_EQ(u[i], 0.0);
          continue;
        }
        if (t % 2 == 1) {
          EXPECT_EQ(std::abs(u[i]), h.cfg.c);
        } else {
          EXPECT_LE(std::abs(u[i]), h.cfg.alpha / std::sqrt(1 - h.cfg.beta) + 1e-6);
          if (h.state.last_dV[i] != 0.0) ever_nonzero[i] = 1;
        }
        EXPECT_GE(h.state.v[i], 0.0);
        EXPECT_EQ(h.state.v[i] == 0.0, ever_nonzero[i] == 0.0);
      }
      robot += 0.01 * ToVec3(u);
      h.Observe(robot, obj);
    }
  }
}

TEST(ControlInputTest, Deterministic) {
  auto run = [] {
    Harness h;
    std::vector<AxisArray> out;
    Vec3 robot{};
    h.Observe(robot, {0.1, 0.1, 0.1});
    SeededRng oracle(8, 0);
    for (int t = 1; t <= 100; ++t) {
      std::optional<similarity::SimilaritySignal> sig;
      if (t % 2 == 0) sig = similarity::SignflipSimilarity(oracle.Uniform(-1, 1), 0.8, oracle);
      out.push_back(ControlInput(h.state, sig, h.cfg, h.rng));
      robot += 0.01 * ToVec3(out.back());
      h.Observe(robot, {0.1, 0.1, 0.1});
    }
    return out;
  };
  EXPECT_EQ(run(), run());
}

ControllerState TraceState(double step_length, const Vec3& obj_start,
                           const Vec3& obj_now) {
  ControllerState s;
  for (int k = 0; k <= 12; ++k) {
    const Vec3 robot{step_length * k, 0.0, 0.0};
    s.Observe(robot, k == 0 ? obj_start : obj_now, 0.1 * k, 1.0);
  }
  return s;
}

TEST(StuckEscapeTest, Examples) {
  const ControllerConfig cfg;
  const Vec3 start{0.2, 0.5, 0.1};
  const Vec3 nudged = start + Vec3{0.01, 0, 0};
  // Ten 0.001 m moves over the window: d_e = 0.01.
  ControllerState wedged = TraceState(0.001, start, nudged);
  ASSERT_NEAR(*TrailingTravel(wedged.pos_trace, 1.0), 0.01, 1e-12);
  const Vec3 out = StuckEscape(wedged, cfg);
  EXPECT_NEAR(out.z - nudged.z, 0.05, kTol);
  EXPECT_EQ(out.x, nudged.x);
  EXPECT_EQ(out.y, nudged.y);

  ControllerState moving = TraceState(0.05, start, nudged);
  ASSERT_NEAR(*TrailingTravel(moving.pos_trace, 1.0), 0.5, 1e-12);
  EXPECT_EQ(StuckEscape(moving, cfg), nudged);

  const Vec3 far = start + Vec3{0.2, 0, 0};
  EXPECT_EQ(StuckEscape(TraceState(0.001, start, far), cfg), far);
}

TEST(StuckEscapeTest, NeedsAFullWindow) {
  ControllerState s;
  for (int k = 0; k < 5; ++k) s.Observe({}, {}, 0.1 * k, 1.0);
  EXPECT_FALSE(TrailingTravel(s.pos_trace, 1.0));
  EXPECT_EQ(StuckEscape(s, ControllerConfig{}), Vec3{});
}

// 1-D toy: the object is the robot, the oracle is perfect.
TEST(ControllerToyTest, PerfectOracleApproachesTarget) {
  ControllerConfig cfg;
  cfg.axes = {true, false, false};
  cfg.approach_term = false;
  cfg.stuck_escape = false;
  int closer = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng init(seed, 1), rng(seed, 2), oracle(seed, 3);
    const double target = 0.0;
    double x = init.Uniform(0.1, 0.5) * (init.Uniform() < 0.5 ? -1 : 1);
    const double initial = std::abs(target - x);
    ControllerState state;
    state.Observe({x, 0, 0}, {x, 0, 0}, 0.0, cfg.stuck_window);
    double y_before = -initial, y_after = 0.0;
    for (int t = 1; t <= 200; ++t) {
      std::optional<similarity::SimilaritySignal> sig;
      if (t % 2 == 0) sig = similarity::SignflipSimilarity(y_after - y_before, 1.0, oracle);
      const AxisArray u = ControlInput(state, sig, cfg, rng);
      x += 0.01 * u[0];
      state.Observe({x, 0, 0}, {x, 0, 0}, 0.1 * t, cfg.stuck_window);
      const double y = -std::abs(target - x);
      if (t % 2 == 1) {
        y_after = y;
      } else {
        y_before = y;
      }
    }
    closer += std::abs(target - x) < initial;
  }
  EXPECT_EQ(closer, 100);
}

}  // namespace
}  // namespace gradseek::controller
