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

#include "gradseek/harness/benchmark.h"

#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gradseek/core/error.h"

namespace gradseek::harness {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void ConfigFail(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

std::string ShortestDouble(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

Method ParseMethod(const json& doc, const std::string& default_endpoint) {
  if (doc.is_string()) {
    if (doc.get<std::string>() == "goal") return Method::Goal();
    ConfigFail("method string must be \"goal\"");
  }
  json oracle = doc;
  if (oracle.is_object() && oracle.value("kind", "") == "remote" &&
      !oracle.contains("endpoint")) {
    oracle["endpoint"] = default_endpoint;
  }
  return Method::FromOracle(ParseOracle(oracle));
}

std::vector<json> AsList(const json& v) {
  if (v.is_array()) return {v.begin(), v.end()};
  return {v};
}

struct TrialSlot {
  const PlanEntry* entry = nullptr;
  int index = 0;
};

TrialRecord RunSlot(const Plan& plan, const TrialSlot& slot) {
  const PlanEntry& e = *slot.entry;
  TrialOptions options;
  if (e.initials > 0) {
    options.init_seed = e.base_seed + static_cast<uint64_t>(slot.index % e.initials);
  }
  return RunTrial(plan.config.task(e.task), plan.config.controller(e.task),
                  e.method, e.base_seed + static_cast<uint64_t>(slot.index),
                  options);
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace

Plan ParsePlan(const json& doc, const std::string& default_endpoint) {
  if (!doc.is_object()) ConfigFail("plan: expected an object");
  Plan plan;
  if (doc.contains("config")) plan.config = ParseRunConfig(doc.at("config"));
  const uint64_t base_seed = doc.value("base_seed", uint64_t{0});
  for (const auto& [key, value] : doc.items()) {
    if (key != "config" && key != "base_seed" && key != "entries") {
      ConfigFail("plan: unknown key " + key);
    }
  }
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    ConfigFail("plan: entries must be a list");
  }
  try {
    for (const json& entry : doc.at("entries")) {
      for (const auto& [key, value] : entry.items()) {
        if (key != "task" && key != "method" && key != "n" &&
            key != "base_seed" && key != "initials" && key != "label") {
          ConfigFail("plan entry: unknown key " + key);
        }
      }
      if (!entry.contains("task") || !entry.contains("method")) {
        ConfigFail("plan entry needs task and method");
      }
      for (const json& t : AsList(entry.at("task"))) {
        const auto task = envs::ParseTaskId(t.get<std::string>());
        if (!task) ConfigFail("unknown task " + t.dump());
        for (const json& m : AsList(entry.at("method"))) {
          PlanEntry e;
          e.task = *task;
          e.method = ParseMethod(m, default_endpoint);
          if (entry.contains("label")) e.method.label = entry.at("label");
          e.n = entry.value("n", 100);
          e.base_seed = entry.value("base_seed", base_seed);
          e.initials = entry.value("initials", 0);
          if (e.n < 1 || e.initials < 0) {
            ConfigFail("plan entry: n must be >= 1 and initials >= 0");
          }
          plan.entries.push_back(std::move(e));
        }
      }
    }
  } catch (const json::exception& e) {
    ConfigFail(std::string("plan: ") + e.what());
  }
  if (plan.entries.empty()) ConfigFail("plan is empty");
  return plan;
}

Plan LoadPlan(const fs::path& path, const std::string& default_endpoint) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read plan " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    ConfigFail(path.string() + ": " + e.what());
  }
  return ParsePlan(doc, default_endpoint);
}

BenchmarkResult RunBenchmark(const Plan& plan, int jobs,
                             const TrialCallback& on_trial) {
  if (plan.entries.empty()) ConfigFail("plan is empty");
  if (jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be >= 1");
  std::vector<TrialSlot> slots;
  for (const PlanEntry& e : plan.entries) {
    for (int i = 0; i < e.n; ++i) slots.push_back({&e, i});
  }

  const auto start = std::chrono::steady_clock::now();
  BenchmarkResult result;
  result.trials.resize(slots.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < slots.size(); i = next++) {
      try {
        result.trials[i] = RunSlot(plan, slots[i]);
        if (on_trial) on_trial(result.trials[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = slots.size();
      }
    }
  };
  const int threads = static_cast<int>(
      std::min<size_t>(static_cast<size_t>(jobs), slots.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.report = Aggregate(plan, result.trials);
  result.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return result;
}

BenchmarkReport Aggregate(const Plan& plan,
                          const std::vector<TrialRecord>& trials) {
  BenchmarkReport report;
  report.config_digest = ConfigDigest(plan.config);
  size_t at = 0;
  for (const PlanEntry& e : plan.entries) {
    ReportRow row;
    row.task = e.task;
    row.method = e.method.label.empty() ? DefaultMethodLabel(e.method)
                                        : e.method.label;
    row.base_seed = e.base_seed;
    row.planned = e.n;
    for (int i = 0; i < e.n; ++i, ++at) {
      if (at >= trials.size()) {
        throw Error(ErrorCode::kInvalidArgument, "fewer records than planned");
      }
      const TrialRecord& r = trials[at];
      if (r.errored) {
        ++row.errored;
        continue;
      }
      ++row.n;
      row.successes += r.success ? 1 : 0;
    }
    row.rate = row.n == 0 ? 0.0 : static_cast<double>(row.successes) / row.n;
    report.errored += row.errored;
    report.rows.push_back(std::move(row));
  }
  return report;
}

json ToJson(const TrialRecord& r) {
  json j = {{"task", envs::TaskName(r.task_id)},
            {"seed", r.seed},
            {"init_seed", r.init_seed},
            {"method", r.method},
            {"success", r.success},
            {"errored", r.errored},
            {"steps_used", r.steps_used},
            {"final_distance", r.final_distance},
            {"retarget_events", r.retarget_events},
            {"trajectory_hash", r.trajectory_hash}};
  if (r.errored) j["error"] = r.error;
  if (r.trajectory) {
    json points = json::array();
    for (const TrajectoryPoint& p : *r.trajectory) {
      points.push_back({{"t", p.t},
                        {"robot",
                         {p.robot.position.x, p.robot.position.y,
                          p.robot.position.z, p.robot.heading}},
                        {"object", {p.object.x, p.object.y, p.object.z}},
                        {"u", p.u},
                        {"r1", p.r1},
                        {"r2", p.r2}});
    }
    j["trajectory"] = std::move(points);
  }
  return j;
}

TrialRecord TrialRecordFromJson(const json& j) {
  TrialRecord r;
  try {
    const auto task = envs::ParseTaskId(j.at("task").get<std::string>());
    if (!task) ConfigFail("unknown task in record");
    r.task_id = *task;
    r.seed = j.at("seed");
    r.init_seed = j.at("init_seed");
    r.method = j.at("method");
    r.success = j.at("success");
    r.errored = j.at("errored");
    r.error = j.value("error", "");
    r.steps_used = j.at("steps_used");
    r.final_distance = j.at("final_distance");
    r.retarget_events = j.at("retarget_events");
    r.trajectory_hash = j.at("trajectory_hash");
    if (j.contains("trajectory")) {
      std::vector<TrajectoryPoint> points;
      for (const json& p : j.at("trajectory")) {
        TrajectoryPoint tp;
        tp.t = p.at("t");
        const json& robot = p.at("robot");
        tp.robot.position = {robot[0], robot[1], robot[2]};
        tp.robot.heading = robot[3];
        const json& obj = p.at("object");
        tp.object = {obj[0], obj[1], obj[2]};
        tp.u = p.at("u");
        tp.r1 = p.at("r1");
        tp.r2 = p.at("r2");
        points.push_back(tp);
      }
      r.trajectory = std::move(points);
    }
  } catch (const json::exception& e) {
    ConfigFail(std::string("trial record: ") + e.what());
  }
  return r;
}

json ToJson(const BenchmarkReport& report) {
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back({{"task", envs::TaskName(row.task)},
                    {"method", row.method},
                    {"base_seed", row.base_seed},
                    {"planned", row.planned},
                    {"n", row.n},
                    {"successes", row.successes},
                    {"errored", row.errored},
                    {"rate", row.rate}});
  }
  return {{"config_digest", report.config_digest},
          {"errored", report.errored},
          {"rows", std::move(rows)}};
}

std::string ReportCsv(const BenchmarkReport& report) {
  std::ostringstream csv;
  csv << "task,method,n,successes,rate\n";
  for (const ReportRow& row : report.rows) {
    std::string method = row.method;
    if (method.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : method) {
        if (ch == '"') quoted += '"';
        quoted += ch;
      }
      method = quoted + "\"";
    }
    csv << envs::TaskName(row.task) << ',' << method << ',' << row.n << ','
        << row.successes << ',' << ShortestDouble(row.rate) << '\n';
  }
  return csv.str();
}

void WriteBenchmark(const BenchmarkResult& result, const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out.string());
  WriteText(out / "report.json", ToJson(result.report).dump(2) + "\n");
  WriteText(out / "report.csv", ReportCsv(result.report));
  std::string lines;
  for (const TrialRecord& r : result.trials) lines += ToJson(r).dump() + "\n";
  WriteText(out / "trials.jsonl", lines);
  WriteText(out / "timing.json",
            json{{"wall_seconds", result.wall_seconds}}.dump() + "\n");
}

}  // namespace gradseek::harness
