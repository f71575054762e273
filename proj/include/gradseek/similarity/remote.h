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

#ifndef GRADSEEK_SIMILARITY_REMOTE_H_
#define GRADSEEK_SIMILARITY_REMOTE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gradseek/envs/render.h"
#include "gradseek/similarity/features.h"

namespace gradseek::similarity {

// Wire format shared with the embedding bridge: one JSON object per line.
//   {"op":"embed_text","text":...}  {"op":"embed_image","png_b64":...}
//   {"op":"info"}
// Responses: {"ok":true,"vector":[...]}, {"ok":true,"dim":N,"model":...} or
// {"ok":false,"error":...}.
namespace wire {

std::string EmbedTextRequest(std::string_view text);
std::string EmbedImageRequest(std::span<const uint8_t> png);
std::string InfoRequest();

// Throws Protocol on malformed lines, ServiceError on ok:false.
FeatureVector ParseVectorResponse(std::string_view line);

struct BridgeInfo {
  int dim = 0;
  std::string model;
};
BridgeInfo ParseInfoResponse(std::string_view line);

std::string Base64Encode(std::span<const uint8_t> bytes);

}  // namespace wire

// Bidirectional line channel.
class LineTransport {
 public:
  virtual ~LineTransport() = default;
  virtual void WriteLine(std::string_view line) = 0;
  virtual std::string ReadLine() = 0;
};

// Endpoint forms: "tcp://host:port", "host:port", or "stdio:<command>"
// (spawns the command through /bin/sh and talks over its stdin/stdout).
// Throws Transport when the endpoint cannot be reached.
std::unique_ptr<LineTransport> OpenTransport(std::string_view endpoint);

// Client of the embedding bridge. Requests are serialized on one
// connection. Text features are cached per client, which the trial runner
// creates once per trial.
class BridgeClient {
 public:
  explicit BridgeClient(std::unique_ptr<LineTransport> transport);
  static BridgeClient Connect(std::string_view endpoint);

  wire::BridgeInfo Info();
  FeatureVector EmbedImage(const envs::ObservationRaster& raster);
  // Empty text is rejected with a Protocol error before any request.
  FeatureVector EmbedText(const std::string& text);

  size_t requests_sent() const { return requests_sent_; }
  std::optional<size_t> session_dim() const { return dim_; }

 private:
  std::string RoundTrip(const std::string& request);
  FeatureVector CheckDim(FeatureVector v);

  std::unique_ptr<LineTransport> transport_;
  std::map<std::string, FeatureVector> text_cache_;
  std::optional<size_t> dim_;
  size_t requests_sent_ = 0;
};

FeatureVector RemoteEmbedImage(const envs::ObservationRaster& raster,
                               BridgeClient& client);
FeatureVector RemoteEmbedText(const std::string& text, BridgeClient& client);

}  // namespace gradseek::similarity

#endif  // GRADSEEK_SIMILARITY_REMOTE_H_
