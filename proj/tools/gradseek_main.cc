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

// gradseek: trials, benchmarks, data collection and accuracy evaluation.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gradseek/core/error.h"
#include "gradseek/core/hash.h"
#include "gradseek/datagen/accuracy.h"
#include "gradseek/datagen/collect.h"
#include "gradseek/datagen/dataset.h"
#include "gradseek/datagen/pairs.h"
#include "gradseek/envs/render.h"
#include "gradseek/harness/benchmark.h"
#include "gradseek/harness/collection.h"
#include "gradseek/harness/config.h"
#include "gradseek/harness/trial.h"

namespace gradseek {
namespace {

namespace fs = std::filesystem;
using harness::json;

constexpr int kExitOk = 0;
constexpr int kExitTaskFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;

constexpr char kBridgeEnv[] = "GRADSEEK_BRIDGE_ADDR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::optional<uint64_t> seed;
  std::string config;
  std::string log_level = "warn";
};

struct OracleFlags {
  std::string kind = "signflip";
  double p = 1.0;
  double sigma = 0.0;
  int dim = 2;
  std::string endpoint;
};

void AddOracleFlags(CLI::App* cmd, OracleFlags& f, bool allow_goal) {
  std::vector<std::string> kinds = {"signflip", "noise", "remote"};
  if (allow_goal) kinds.push_back("goal");
  cmd->add_option("--oracle", f.kind, "Similarity source")
      ->check(CLI::IsMember(kinds));
  cmd->add_option("--p", f.p, "Signflip accuracy")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--sigma", f.sigma, "Noise oracle scale")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dim", f.dim, "Noise oracle feature dimension")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--endpoint", f.endpoint,
                  std::string("Bridge address, default $") + kBridgeEnv);
}

std::string BridgeEndpoint(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv(kBridgeEnv);
  return env ? env : "";
}

harness::Method MethodFromFlags(const OracleFlags& f) {
  if (f.kind == "goal") return harness::Method::Goal();
  if (f.kind == "noise") {
    return harness::Method::FromOracle(similarity::OracleConfig::Noise(f.sigma, f.dim));
  }
  if (f.kind == "remote") {
    const std::string endpoint = BridgeEndpoint(f.endpoint);
    if (endpoint.empty()) {
      throw UsageError(std::string("remote oracle needs --endpoint or ") +
                       kBridgeEnv);
    }
    return harness::Method::FromOracle(similarity::OracleConfig::Remote(endpoint));
  }
  return harness::Method::FromOracle(similarity::OracleConfig::Signflip(f.p));
}

envs::TaskId TaskOrUsage(const std::string& name) {
  const auto id = envs::ParseTaskId(name);
  if (!id) throw UsageError("unknown task: " + name);
  return *id;
}

harness::RunConfig LoadConfig(const GlobalFlags& g) {
  return g.config.empty() ? harness::DefaultRunConfig()
                          : harness::LoadRunConfig(g.config);
}

void SetUpLogging(const std::string& level) {
  auto logger = spdlog::stderr_color_mt("gradseek");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::from_str(level));
}

// ---- trial ----

struct TrialFlags {
  std::string task;
  OracleFlags oracle;
  std::optional<uint64_t> init_seed;
  std::string trace_out;
};

int RunTrialCommand(const GlobalFlags& g, const TrialFlags& f) {
  const envs::TaskId id = TaskOrUsage(f.task);
  const harness::RunConfig config = LoadConfig(g);
  const harness::Method method = MethodFromFlags(f.oracle);
  harness::TrialOptions options;
  options.record_trajectory = !f.trace_out.empty();
  options.init_seed = f.init_seed;
  const uint64_t seed = g.seed.value_or(0);
  spdlog::info("trial {} {} seed {}", f.task, harness::DefaultMethodLabel(method),
               seed);
  harness::TrialRecord record = harness::RunTrial(
      config.task(id), config.controller(id), method, seed, options);
  if (record.trajectory) {
    std::ofstream trace(f.trace_out, std::ios::trunc);
    const json full = harness::ToJson(record);
    for (const json& point : full.at("trajectory")) {
      trace << point.dump() << '\n';
    }
    if (!trace) throw Error(ErrorCode::kIo, "cannot write " + f.trace_out);
    record.trajectory.reset();
  }
  json out = harness::ToJson(record);
  out["config_digest"] = harness::ConfigDigest(config);
  std::cout << out.dump() << std::endl;
  if (record.errored) {
    spdlog::error("trial errored: {}", record.error);
    return kExitTransport;
  }
  return record.success ? kExitOk : kExitTaskFailure;
}

// ---- bench ----

struct BenchFlags {
  std::string plan;
  std::string out = "bench_out";
  int jobs = 0;
};

int RunBenchCommand(const GlobalFlags& g, const BenchFlags& f) {
  std::ifstream in(f.plan);
  if (!in) throw UsageError("cannot read plan " + f.plan);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, f.plan + ": " + e.what());
  }
  if (g.seed && doc.is_object()) doc["base_seed"] = *g.seed;
  harness::Plan plan = harness::ParsePlan(doc, BridgeEndpoint(""));
  if (!g.config.empty()) plan.config = harness::LoadRunConfig(g.config);
  const int jobs = f.jobs > 0 ? f.jobs
                              : std::max(1u, std::thread::hardware_concurrency());
  size_t total = 0;
  for (const auto& e : plan.entries) total += e.n;
  spdlog::info("bench: {} cells, {} trials, {} jobs", plan.entries.size(),
               total, jobs);
  const harness::BenchmarkResult result = harness::RunBenchmark(plan, jobs);
  harness::WriteBenchmark(result, f.out);
  std::cout << harness::ReportCsv(result.report);
  spdlog::info("bench: wrote {} in {:.1f} s", f.out, result.wall_seconds);
  if (result.report.errored > 0) {
    spdlog::warn("bench: {} errored trials excluded from rates",
                 result.report.errored);
  }
  return kExitOk;
}

// ---- collect ----

struct CollectFlags {
  std::vector<std::string> tasks;
  double delta_y = 0.01;
  int samples = 1000;
  int pairs = 10000;
  std::string out;
  std::string driver = "scripted";
  std::string gate = "last";
  int max_episodes = 10000;
};

int RunCollectCommand(const GlobalFlags& g, const CollectFlags& f) {
  std::vector<envs::TaskId> ids;
  for (const std::string& name : f.tasks) {
    if (name == "all") {
      ids.assign(envs::kArticulatedTasks.begin(), envs::kArticulatedTasks.end());
    } else {
      ids.push_back(TaskOrUsage(name));
    }
  }
  const harness::RunConfig config = LoadConfig(g);
  const uint64_t seed = g.seed.value_or(0);
  datagen::GateOptions gate;
  gate.delta_y = f.delta_y;
  gate.max_samples = f.samples;
  gate.reference = f.gate == "previous" ? datagen::GateReference::kPreviousFrame
                                        : datagen::GateReference::kLastCollected;

  std::vector<datagen::Sample> dataset;
  std::vector<datagen::LabeledPair> pairs;
  bool exhausted = false;
  for (envs::TaskId id : ids) {
    const envs::TaskConfig& task = config.task(id);
    const uint64_t task_seed = seed * 1000003ULL + static_cast<uint64_t>(id);
    datagen::EpisodeFrameSource source(
        task,
        f.driver == "controller"
            ? harness::ControllerEpisodes(task, config.controller(id), task_seed)
            : datagen::ScriptedEpisodes(task, task_seed),
        f.max_episodes);
    std::vector<datagen::Sample> samples;
    try {
      samples = datagen::GatedCollect(source, gate);
    } catch (const datagen::StreamExhausted& e) {
      spdlog::error("collect {}: stream ended after {} of {} samples",
                    envs::TaskName(id), e.collected(), f.samples);
      samples = e.partial();
      exhausted = true;
    }
    spdlog::info("collect {}: {} samples from {} episodes", envs::TaskName(id),
                 samples.size(), source.episodes_started());
    const size_t offset = dataset.size();
    if (f.pairs > 0 && samples.size() >= 2) {
      SeededRng rng(task_seed, 4);
      for (datagen::LabeledPair p :
           datagen::SamplePairs(samples, f.pairs, task.texts, rng)) {
        p.i1 += offset;
        p.i2 += offset;
        pairs.push_back(std::move(p));
      }
    }
    for (auto& s : samples) dataset.push_back(std::move(s));
  }
  const auto manifest = datagen::ExportSamples(dataset, f.out);
  datagen::ExportPairs(pairs, f.out);
  std::cout << json{{"manifest", manifest.path.string()},
                    {"samples", dataset.size()},
                    {"pairs", pairs.size()}}
                   .dump()
            << std::endl;
  return exhausted ? kExitTaskFailure : kExitOk;
}

// ---- accuracy ----

struct AccuracyFlags {
  std::string pairs;
  std::string dataset;
  OracleFlags oracle;
  std::optional<double> calibrate;
};

int RunAccuracyCommand(const GlobalFlags& g, const AccuracyFlags& f) {
  const fs::path pairs_file = f.pairs;
  const fs::path root =
      f.dataset.empty() ? pairs_file.parent_path() : fs::path(f.dataset);
  const std::vector<datagen::Sample> dataset = datagen::ImportSamples(root);
  const std::vector<datagen::LabeledPair> pairs =
      datagen::ImportPairs(pairs_file, dataset);
  const harness::RunConfig config = LoadConfig(g);
  const uint64_t seed = g.seed.value_or(0);

  std::map<envs::TaskId, std::vector<datagen::LabeledPair>> by_task;
  for (const auto& p : pairs) by_task[p.task].push_back(p);

  if (f.calibrate) {
    json out = json::object();
    for (const auto& [id, task_pairs] : by_task) {
      out[std::string(envs::TaskName(id))] = datagen::CalibrateNoiseScale(
          task_pairs, dataset, config.task(id), *f.calibrate, seed, 1.0, 40,
          f.oracle.dim);
    }
    std::cout << json{{"noise_scale", out}}.dump() << std::endl;
    return kExitOk;
  }

  const harness::Method method = MethodFromFlags(f.oracle);
  if (method.gradient == controller::GradientSource::kGoal) {
    throw UsageError("accuracy needs a similarity oracle");
  }
  int hits = 0;
  int trials = 0;
  int excluded = 0;
  json per_task = json::object();
  for (const auto& [id, task_pairs] : by_task) {
    auto oracle = similarity::MakeOracle(method.oracle, config.task(id),
                                         SeededRng(seed, 3));
    const datagen::AccuracyReport r =
        datagen::TextAccuracy(task_pairs, dataset, *oracle);
    int task_hits = 0;
    for (uint8_t b : r.bits) task_hits += b;
    hits += task_hits;
    trials += r.n_trials;
    excluded += r.excluded;
    per_task[std::string(envs::TaskName(id))] = {
        {"accuracy", r.accuracy}, {"n_trials", r.n_trials}, {"excluded", r.excluded}};
  }
  std::cout << json{{"oracle", harness::DefaultMethodLabel(method)},
                    {"accuracy", trials ? static_cast<double>(hits) / trials : 0.0},
                    {"n_trials", trials},
                    {"excluded", excluded},
                    {"tasks", per_task}}
                   .dump()
            << std::endl;
  return kExitOk;
}

// ---- render-check ----

struct RenderFlags {
  std::string task;
  std::string out;
  std::string golden;
  int width = 224;
  int height = 224;
};

int RunRenderCheckCommand(const GlobalFlags& g, const RenderFlags& f) {
  const envs::TaskId id = TaskOrUsage(f.task);
  const harness::RunConfig config = LoadConfig(g);
  SeededRng rng(g.seed.value_or(0), 1);
  const envs::SceneState scene = envs::SampleInitialState(config.task(id), rng);
  const envs::ObservationRaster raster =
      envs::RenderObservation(scene, config.task(id), {f.width, f.height});
  if (!f.out.empty()) {
    std::ofstream out(f.out, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(raster.png.data()),
              static_cast<std::streamsize>(raster.png.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + f.out);
  }
  Fnv1a hash;
  hash.Update(raster.png);
  json result = {{"task", f.task},
                 {"seed", g.seed.value_or(0)},
                 {"bytes", raster.png.size()},
                 {"fnv1a", hash.Hex()}};
  int status = kExitOk;
  if (!f.golden.empty()) {
    std::ifstream in(f.golden, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read golden " + f.golden);
    const std::vector<uint8_t> golden(std::istreambuf_iterator<char>(in), {});
    const bool match = golden == raster.png;
    result["match"] = match;
    if (!match) status = kExitTaskFailure;
  }
  std::cout << result.dump() << std::endl;
  return status;
}

int Main(int argc, char** argv) {
  CLI::App app{"Vision-language guided randomized control"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--seed", g.seed, "Trial seed or benchmark base seed");
  app.add_option("--config", g.config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--log-level", g.log_level, "Log level")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  TrialFlags trial;
  CLI::App* trial_cmd = app.add_subcommand("trial", "Run one closed-loop trial");
  trial_cmd->add_option("--task", trial.task, "Task id")->required();
  AddOracleFlags(trial_cmd, trial.oracle, /*allow_goal=*/true);
  trial_cmd->add_option("--init-seed", trial.init_seed,
                        "Seed of the initial state, default --seed");
  trial_cmd->add_option("--trace-out", trial.trace_out,
                        "Write the trajectory as JSON lines");

  BenchFlags bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark plan");
  bench_cmd->add_option("--plan", bench.plan, "Plan JSON")->required();
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads, default all cores")
      ->check(CLI::PositiveNumber);

  CollectFlags collect;
  CLI::App* collect_cmd =
      app.add_subcommand("collect", "Collect a gated image/progress dataset");
  collect_cmd->add_option("--task", collect.tasks, "Task ids or 'all'")
      ->required();
  collect_cmd->add_option("--delta-y", collect.delta_y, "Gate threshold (m)")
      ->check(CLI::PositiveNumber);
  collect_cmd->add_option("--samples", collect.samples, "Samples per task (M)")
      ->check(CLI::Range(2, 100000000));
  collect_cmd->add_option("--pairs", collect.pairs, "Pairs per task (K)")
      ->check(CLI::NonNegativeNumber);
  collect_cmd->add_option("--out", collect.out, "Dataset directory")->required();
  collect_cmd->add_option("--driver", collect.driver, "Frame source")
      ->check(CLI::IsMember({"scripted", "controller"}));
  collect_cmd->add_option("--gate", collect.gate, "Gate reference")
      ->check(CLI::IsMember({"last", "previous"}));
  collect_cmd->add_option("--max-episodes", collect.max_episodes,
                          "Episode budget per task")
      ->check(CLI::PositiveNumber);

  AccuracyFlags accuracy;
  CLI::App* accuracy_cmd =
      app.add_subcommand("accuracy", "Text accuracy rate over labeled pairs");
  accuracy_cmd->add_option("--pairs", accuracy.pairs, "pairs.jsonl")->required();
  accuracy_cmd->add_option("--dataset", accuracy.dataset,
                           "Dataset root, default the pairs file's directory");
  AddOracleFlags(accuracy_cmd, accuracy.oracle, /*allow_goal=*/false);
  accuracy_cmd->add_option("--calibrate", accuracy.calibrate,
                           "Report the noise scale reaching this accuracy")
      ->check(CLI::Range(0.5, 1.0));

  RenderFlags render;
  CLI::App* render_cmd = app.add_subcommand(
      "render-check", "Render an initial scene and compare with a golden PNG");
  render_cmd->add_option("--task", render.task, "Task id")->required();
  render_cmd->add_option("--out", render.out, "Write the PNG here");
  render_cmd->add_option("--golden", render.golden, "Expected PNG bytes");
  render_cmd->add_option("--width", render.width)->check(CLI::Range(1, 4096));
  render_cmd->add_option("--height", render.height)->check(CLI::Range(1, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  SetUpLogging(g.log_level);

  try {
    if (*trial_cmd) return RunTrialCommand(g, trial);
    if (*bench_cmd) return RunBenchCommand(g, bench);
    if (*collect_cmd) return RunCollectCommand(g, collect);
    if (*accuracy_cmd) return RunAccuracyCommand(g, accuracy);
    if (*render_cmd) return RunRenderCheckCommand(g, render);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    switch (e.code()) {
      case ErrorCode::kTransport:
      case ErrorCode::kProtocol:
      case ErrorCode::kService:
        return kExitTransport;
      case ErrorCode::kConfig:
      case ErrorCode::kInvalidArgument:
        return kExitUsage;
      default:
        return kExitTaskFailure;
    }
  }
  return kExitUsage;
}

}  // namespace
}  // namespace gradseek

int main(int argc, char** argv) { return gradseek::Main(argc, argv); }
