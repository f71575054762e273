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

#include "gradseek/harness/config.h"

#include <fstream>
#include <set>

#include "gradseek/core/error.h"
#include "gradseek/core/hash.h"
#include "gradseek/harness/trial.h"

namespace gradseek::harness {
namespace {

[[noreturn]] void ConfigFail(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

// Reads fields from one JSON object and rejects keys nobody consumed.
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string where)
      : doc_(doc), where_(std::move(where)) {
    if (!doc_.is_object()) ConfigFail(where_ + ": expected an object");
  }

  const json* Find(const std::string& key) {
    used_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

  template <typename T>
  void Read(const std::string& key, T& field) {
    if (const json* v = Find(key)) {
      try {
        field = v->get<T>();
      } catch (const json::exception&) {
        ConfigFail(where_ + "." + key + ": wrong type");
      }
    }
  }

  void Read(const std::string& key, Vec3& field) {
    if (const json* v = Find(key)) {
      if (!v->is_array() || v->size() != 3) {
        ConfigFail(where_ + "." + key + ": expected [x, y, z]");
      }
      for (int i = 0; i < 3; ++i) field[i] = (*v)[i].get<double>();
    }
  }

  template <typename T, size_t N>
  void Read(const std::string& key, std::array<T, N>& field) {
    if (const json* v = Find(key)) {
      if (!v->is_array() || v->size() != N) {
        ConfigFail(where_ + "." + key + ": expected " + std::to_string(N) +
                   " values");
      }
      for (size_t i = 0; i < N; ++i) field[i] = (*v)[i].get<T>();
    }
  }

  void Finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!used_.contains(key)) ConfigFail(where_ + ": unknown key " + key);
    }
  }

  const std::string& where() const { return where_; }

 private:
  const json& doc_;
  std::string where_;
  std::set<std::string> used_;
};

json VecJson(const Vec3& v) { return {v.x, v.y, v.z}; }

void OverlayTask(const json& doc, envs::TaskConfig& task, const std::string& where) {
  ObjectReader r(doc, where);
  r.Read("success_threshold", task.success_threshold);
  r.Read("max_steps", task.max_steps);
  r.Read("dt", task.dt);
  r.Read("action_scale", task.action_scale);
  r.Read("contact_radius", task.contact_radius);
  r.Read("q_target", task.q_target);
  r.Read("target", task.target);
  r.Read("landmark", task.landmark);
  if (const json* t = r.Find("texts")) {
    ObjectReader tr(*t, where + ".texts");
    tr.Read("instruction", task.texts.instruction);
    tr.Read("opposite", task.texts.opposite);
    tr.Finish();
  }
  if (const json* w = r.Find("workspace")) {
    ObjectReader wr(*w, where + ".workspace");
    wr.Read("lo", task.workspace.lo);
    wr.Read("hi", task.workspace.hi);
    wr.Finish();
  }
  if (const json* u = r.Find("unicycle")) {
    ObjectReader ur(*u, where + ".unicycle");
    ur.Read("k_v", task.unicycle.k_v);
    ur.Read("k_omega", task.unicycle.k_omega);
    ur.Read("v_max", task.unicycle.v_max);
    ur.Read("omega_max", task.unicycle.omega_max);
    ur.Finish();
  }
  if (const json* s = r.Find("sampler")) {
    ObjectReader sr(*s, where + ".sampler");
    sr.Read("q_start", task.sampler.q_start);
    sr.Read("q_jitter", task.sampler.q_jitter);
    sr.Read("robot_home", task.sampler.robot_home);
    sr.Read("robot_jitter", task.sampler.robot_jitter);
    sr.Read("heading_min", task.sampler.heading_min);
    sr.Read("heading_max", task.sampler.heading_max);
    sr.Finish();
  }
  if (const json* a = r.Find("articulation")) {
    ObjectReader ar(*a, where + ".articulation");
    ar.Read("origin", task.articulation.origin);
    ar.Read("axis", task.articulation.axis);
    ar.Read("radius", task.articulation.radius);
    ar.Read("angle0", task.articulation.angle0);
    ar.Read("direction", task.articulation.direction);
    ar.Read("q_min", task.articulation.q_min);
    ar.Read("q_max", task.articulation.q_max);
    ar.Finish();
  }
  if (const json* g = r.Find("target_region")) {
    if (g->is_null()) {
      task.target_region.reset();
    } else {
      envs::Rect2 rect = task.target_region.value_or(envs::Rect2{});
      ObjectReader gr(*g, where + ".target_region");
      gr.Read("x_min", rect.x_min);
      gr.Read("x_max", rect.x_max);
      gr.Read("y_min", rect.y_min);
      gr.Read("y_max", rect.y_max);
      gr.Finish();
      task.target_region = rect;
    }
  }
  r.Finish();
  if (!(task.success_threshold > 0.0) || task.max_steps < 1 ||
      !(task.dt > 0.0) || !(task.action_scale > 0.0) ||
      !(task.contact_radius >= 0.0)) {
    ConfigFail(where + ": thresholds, dt, action_scale and max_steps must be "
                       "positive");
  }
}

void OverlayController(const json& doc, controller::ControllerConfig& cfg,
                       const std::string& where) {
  ObjectReader r(doc, where);
  r.Read("c", cfg.c);
  if (const json* v = r.Find("c_per_axis")) {
    if (v->is_null()) {
      cfg.c_per_axis.reset();
    } else {
      AxisArray c{};
      if (!v->is_array() || v->size() != 3) {
        ConfigFail(where + ".c_per_axis: expected 3 values");
      }
      for (int i = 0; i < 3; ++i) c[i] = (*v)[i].get<double>();
      cfg.c_per_axis = c;
    }
  }
  r.Read("alpha", cfg.alpha);
  r.Read("beta", cfg.beta);
  r.Read("epsilon", cfg.epsilon);
  r.Read("lambda", cfg.lambda);
  r.Read("axes", cfg.axes);
  r.Read("approach_term", cfg.approach_term);
  r.Read("stuck_escape", cfg.stuck_escape);
  r.Read("delta_e", cfg.delta_e);
  r.Read("delta_o", cfg.delta_o);
  r.Read("stuck_window", cfg.stuck_window);
  r.Read("escape_height", cfg.escape_height);
  r.Finish();
  try {
    cfg.Validate();
  } catch (const Error& e) {
    ConfigFail(where + ": " + e.what());
  }
}

envs::TaskId TaskKey(const std::string& name) {
  const auto id = envs::ParseTaskId(name);
  if (!id) ConfigFail("unknown task " + name);
  return *id;
}

}  // namespace

RunConfig DefaultRunConfig() {
  RunConfig config;
  for (envs::TaskId id : envs::kAllTasks) {
    config.tasks.emplace(id, envs::DefaultTask(id));
    config.controllers.emplace(id, DefaultControllerConfig(id));
  }
  return config;
}

similarity::OracleConfig ParseOracle(const json& doc) {
  ObjectReader r(doc, "oracle");
  std::string kind;
  r.Read("kind", kind);
  similarity::OracleConfig oracle_cfg;
  if (kind == "signflip") {
    double p = 1.0;
    r.Read("p", p);
    oracle_cfg = similarity::OracleConfig::Signflip(p);
  } else if (kind == "noise") {
    double sigma = 0.0;
    int dim = 2;
    r.Read("sigma", sigma);
    r.Read("dim", dim);
    oracle_cfg = similarity::OracleConfig::Noise(sigma, dim);
  } else if (kind == "remote") {
    std::string endpoint;
    r.Read("endpoint", endpoint);
    oracle_cfg = similarity::OracleConfig::Remote(endpoint);
  } else {
    ConfigFail("oracle.kind must be signflip, noise or remote");
  }
  r.Finish();
  try {
    oracle_cfg.Validate();
  } catch (const Error& e) {
    ConfigFail(std::string("oracle: ") + e.what());
  }
  return oracle_cfg;
}

RunConfig ParseRunConfig(const json& doc) {
  RunConfig config = DefaultRunConfig();
  ObjectReader r(doc, "config");
  if (const json* c = r.Find("controller")) {
    for (auto& [id, ctrl] : config.controllers) {
      OverlayController(*c, ctrl, "controller");
    }
  }
  if (const json* tasks = r.Find("tasks")) {
    if (!tasks->is_object()) ConfigFail("tasks: expected an object");
    for (const auto& [name, entry] : tasks->items()) {
      const envs::TaskId id = TaskKey(name);
      ObjectReader tr(entry, "tasks." + name);
      if (const json* t = tr.Find("task")) {
        OverlayTask(*t, config.tasks.at(id), tr.where() + ".task");
      }
      if (const json* c = tr.Find("controller")) {
        OverlayController(*c, config.controllers.at(id),
                          tr.where() + ".controller");
      }
      tr.Finish();
    }
  }
  if (const json* o = r.Find("oracle")) config.oracle = ParseOracle(*o);
  r.Finish();
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    ConfigFail(path.string() + ": " + e.what());
  }
  return ParseRunConfig(doc);
}

json ToJson(const envs::TaskConfig& task) {
  json j = {
      {"success_threshold", task.success_threshold},
      {"max_steps", task.max_steps},
      {"dt", task.dt},
      {"action_scale", task.action_scale},
      {"contact_radius", task.contact_radius},
      {"q_target", task.q_target},
      {"target", VecJson(task.target)},
      {"landmark", VecJson(task.landmark)},
      {"texts",
       {{"instruction", task.texts.instruction},
        {"opposite", task.texts.opposite}}},
      {"workspace",
       {{"lo", VecJson(task.workspace.lo)}, {"hi", VecJson(task.workspace.hi)}}},
      {"unicycle",
       {{"k_v", task.unicycle.k_v},
        {"k_omega", task.unicycle.k_omega},
        {"v_max", task.unicycle.v_max},
        {"omega_max", task.unicycle.omega_max}}},
      {"sampler",
       {{"q_start", task.sampler.q_start},
        {"q_jitter", task.sampler.q_jitter},
        {"robot_home", VecJson(task.sampler.robot_home)},
        {"robot_jitter", VecJson(task.sampler.robot_jitter)},
        {"heading_min", task.sampler.heading_min},
        {"heading_max", task.sampler.heading_max}}},
      {"articulation",
       {{"origin", VecJson(task.articulation.origin)},
        {"axis", VecJson(task.articulation.axis)},
        {"radius", task.articulation.radius},
        {"angle0", task.articulation.angle0},
        {"direction", task.articulation.direction},
        {"q_min", task.articulation.q_min},
        {"q_max", task.articulation.q_max}}},
  };
  if (task.target_region) {
    const envs::Rect2& g = *task.target_region;
    j["target_region"] = {{"x_min", g.x_min},
                          {"x_max", g.x_max},
                          {"y_min", g.y_min},
                          {"y_max", g.y_max}};
  } else {
    j["target_region"] = nullptr;
  }
  return j;
}

json ToJson(const controller::ControllerConfig& ctrl) {
  json j = {{"c", ctrl.c},
            {"alpha", ctrl.alpha},
            {"beta", ctrl.beta},
            {"epsilon", ctrl.epsilon},
            {"lambda", ctrl.lambda},
            {"axes", ctrl.axes},
            {"approach_term", ctrl.approach_term},
            {"stuck_escape", ctrl.stuck_escape},
            {"delta_e", ctrl.delta_e},
            {"delta_o", ctrl.delta_o},
            {"stuck_window", ctrl.stuck_window},
            {"escape_height", ctrl.escape_height}};
  j["c_per_axis"] = ctrl.c_per_axis ? json(*ctrl.c_per_axis) : json(nullptr);
  return j;
}

json ToJson(const similarity::OracleConfig& oracle) {
  if (const auto* p =
          std::get_if<similarity::SignflipOracleParams>(&oracle.params)) {
    return {{"kind", "signflip"}, {"p", p->accuracy}};
  }
  if (const auto* p = std::get_if<similarity::NoiseOracleParams>(&oracle.params)) {
    return {{"kind", "noise"}, {"sigma", p->noise_scale}, {"dim", p->dim}};
  }
  const auto& p = std::get<similarity::RemoteOracleParams>(oracle.params);
  return {{"kind", "remote"}, {"endpoint", p.endpoint}};
}

json ToJson(const RunConfig& config) {
  json tasks = json::object();
  for (const auto& [id, task] : config.tasks) {
    tasks[std::string(envs::TaskName(id))] = {
        {"task", ToJson(task)},
        {"controller", ToJson(config.controllers.at(id))}};
  }
  return {{"tasks", tasks}, {"oracle", ToJson(config.oracle)}};
}

std::string ConfigDigest(const RunConfig& config) {
  return HexDigest(ToJson(config).dump());
}

}  // namespace gradseek::harness
