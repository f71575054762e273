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

#ifndef GRADSEEK_HARNESS_BENCHMARK_H_
#define GRADSEEK_HARNESS_BENCHMARK_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gradseek/harness/config.h"
#include "gradseek/harness/trial.h"

namespace gradseek::harness {

// One (task, method) cell: trials use seeds base_seed + i. With
// initials > 0 the initial state cycles through `initials` fixed samplers
// seeded base_seed + (i % initials), e.g. 5 initials x 6 repeats for n = 30.
struct PlanEntry {
  envs::TaskId task = envs::TaskId::kDrawerClose;
  Method method;
  int n = 100;
  uint64_t base_seed = 0;
  int initials = 0;
};

struct Plan {
  std::vector<PlanEntry> entries;
  RunConfig config = DefaultRunConfig();
};

// Plan document:
//   {"base_seed": 0, "config": {...},
//    "entries": [{"task": "drawer-close" | [..],
//                 "method": "goal" | {"kind": "signflip", "p": 1.0} | [..],
//                 "n": 100, "base_seed": 0, "initials": 0, "label": ".."}]}
// List-valued task/method fields expand to their cross product, tasks
// outermost. A remote method without an endpoint takes `default_endpoint`.
// Throws Config; an empty plan is rejected.
Plan ParsePlan(const json& doc, const std::string& default_endpoint = "");
Plan LoadPlan(const std::filesystem::path& path,
              const std::string& default_endpoint = "");

struct ReportRow {
  envs::TaskId task = envs::TaskId::kDrawerClose;
  std::string method;
  uint64_t base_seed = 0;
  int planned = 0;
  int n = 0;          // trials counted, errored ones excluded
  int successes = 0;
  int errored = 0;
  double rate = 0.0;  // successes / n

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct BenchmarkReport {
  std::vector<ReportRow> rows;  // plan order
  std::string config_digest;
  int errored = 0;

  friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

struct BenchmarkResult {
  BenchmarkReport report;
  std::vector<TrialRecord> trials;  // plan order, then trial index
  double wall_seconds = 0.0;
};

using TrialCallback = std::function<void(const TrialRecord&)>;

// Runs every trial on `jobs` worker threads. Results are folded in trial
// order, so the report does not depend on `jobs`. The callback, if any, is
// invoked from worker threads.
BenchmarkResult RunBenchmark(const Plan& plan, int jobs,
                             const TrialCallback& on_trial = {});

// rate = successes / n over non-errored records.
BenchmarkReport Aggregate(const Plan& plan,
                          const std::vector<TrialRecord>& trials);

json ToJson(const TrialRecord& record);
TrialRecord TrialRecordFromJson(const json& doc);
json ToJson(const BenchmarkReport& report);
std::string ReportCsv(const BenchmarkReport& report);

// report.json, report.csv, trials.jsonl and timing.json under `out`.
// Everything but timing.json is a pure function of the plan.
void WriteBenchmark(const BenchmarkResult& result,
                    const std::filesystem::path& out);

}  // namespace gradseek::harness

#endif  // GRADSEEK_HARNESS_BENCHMARK_H_
