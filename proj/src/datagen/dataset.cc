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

#include "gradseek/datagen/dataset.h"

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "gradseek/core/error.h"
#include "json.hpp"

namespace gradseek::datagen {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void IoFail(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::kIo, what + ": " + path.string());
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) IoFail("cannot write", path);
  return out;
}

uint32_t ReadBe32(const std::vector<uint8_t>& b, size_t at) {
  return (uint32_t{b[at]} << 24) | (uint32_t{b[at + 1]} << 16) |
         (uint32_t{b[at + 2]} << 8) | uint32_t{b[at + 3]};
}

envs::ObservationRaster ReadPng(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) IoFail("cannot read", path);
  envs::ObservationRaster raster;
  raster.png.assign(std::istreambuf_iterator<char>(in), {});
  static constexpr uint8_t kSignature[8] = {0x89, 'P', 'N', 'G',
                                            '\r', '\n', 0x1a, '\n'};
  if (raster.png.size() < 24 ||
      !std::equal(std::begin(kSignature), std::end(kSignature),
                  raster.png.begin())) {
    IoFail("not a PNG file", path);
  }
  raster.width = static_cast<int>(ReadBe32(raster.png, 16));
  raster.height = static_cast<int>(ReadBe32(raster.png, 20));
  return raster;
}

std::vector<json> ReadJsonLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) IoFail("cannot read", path);
  std::vector<json> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::exception& e) {
      IoFail("line " + std::to_string(number) + ": " + e.what(), path);
    }
  }
  return rows;
}

envs::TaskId TaskFromJson(const json& row, const fs::path& path) {
  const auto id = envs::ParseTaskId(row.at("task").get<std::string>());
  if (!id) IoFail("unknown task " + row.at("task").dump(), path);
  return *id;
}

}  // namespace

Manifest ExportSamples(std::span<Sample> samples, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root / "images", ec);
  if (ec) IoFail("cannot create " + ec.message(), root / "images");
  const fs::path manifest = root / kManifestFile;
  std::ofstream out = OpenOut(manifest);
  for (Sample& s : samples) {
    std::ostringstream name;
    name << "images/" << envs::TaskName(s.task) << "_" << s.k << ".png";
    s.image_path = name.str();
    std::ofstream png = OpenOut(root / s.image_path);
    png.write(reinterpret_cast<const char*>(s.image.png.data()),
              static_cast<std::streamsize>(s.image.png.size()));
    if (!png) IoFail("write failed", root / s.image_path);
    const json row = {{"task", envs::TaskName(s.task)},
                      {"k", s.k},
                      {"y", s.y},
                      {"image", s.image_path}};
    out << row.dump() << '\n';
  }
  if (!out) IoFail("write failed", manifest);
  return {manifest, samples.size()};
}

Manifest ExportPairs(std::span<const LabeledPair> pairs, const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) IoFail("cannot create " + ec.message(), root);
  const fs::path file = root / kPairsFile;
  std::ofstream out = OpenOut(file);
  for (const LabeledPair& p : pairs) {
    const json row = {{"task", envs::TaskName(p.task)},
                      {"i1", p.i1},
                      {"i2", p.i2},
                      {"t1", p.text_order.instruction},
                      {"t2", p.text_order.opposite}};
    out << row.dump() << '\n';
  }
  if (!out) IoFail("write failed", file);
  return {file, pairs.size()};
}

std::vector<Sample> ImportSamples(const fs::path& root) {
  const fs::path manifest = root / kManifestFile;
  std::vector<Sample> samples;
  for (const json& row : ReadJsonLines(manifest)) {
    try {
      Sample s;
      s.task = TaskFromJson(row, manifest);
      s.k = row.at("k").get<int>();
      s.y = row.at("y").get<double>();
      s.image_path = row.at("image").get<std::string>();
      s.image = ReadPng(root / s.image_path);
      samples.push_back(std::move(s));
    } catch (const json::exception& e) {
      IoFail(std::string("malformed record: ") + e.what(), manifest);
    }
  }
  return samples;
}

std::vector<LabeledPair> ImportPairs(const fs::path& pairs_file,
                                     std::span<const Sample> dataset) {
  std::vector<LabeledPair> pairs;
  for (const json& row : ReadJsonLines(pairs_file)) {
    try {
      LabeledPair p;
      p.task = TaskFromJson(row, pairs_file);
      p.i1 = row.at("i1").get<size_t>();
      p.i2 = row.at("i2").get<size_t>();
      if (p.i1 >= dataset.size() || p.i2 >= dataset.size()) {
        IoFail("pair index out of range", pairs_file);
      }
      p.y1 = dataset[p.i1].y;
      p.y2 = dataset[p.i2].y;
      p.text_order = {row.at("t1").get<std::string>(),
                      row.at("t2").get<std::string>()};
      pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      IoFail(std::string("malformed record: ") + e.what(), pairs_file);
    }
  }
  return pairs;
}

}  // namespace gradseek::datagen
