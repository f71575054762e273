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

#include "gradseek/similarity/remote.h"

#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "gradseek/core/error.h"
#include "json.hpp"

namespace gradseek::similarity {
namespace wire {
namespace {

using nlohmann::json;

json ParseObject(std::string_view line) {
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kProtocol,
                "response is not a JSON object: " + std::string(line.substr(0, 120)));
  }
  const auto ok = doc.find("ok");
  if (ok == doc.end() || !ok->is_boolean()) {
    throw Error(ErrorCode::kProtocol, "response lacks boolean \"ok\"");
  }
  if (!ok->get<bool>()) {
    const auto err = doc.find("error");
    throw Error(ErrorCode::kService,
                err != doc.end() && err->is_string() ? err->get<std::string>()
                                                     : "unspecified bridge error");
  }
  return doc;
}

}  // namespace

std::string EmbedTextRequest(std::string_view text) {
  return json{{"op", "embed_text"}, {"text", text}}.dump();
}

std::string EmbedImageRequest(std::span<const uint8_t> png) {
  return json{{"op", "embed_image"}, {"png_b64", Base64Encode(png)}}.dump();
}

std::string InfoRequest() { return json{{"op", "info"}}.dump(); }

FeatureVector ParseVectorResponse(std::string_view line) {
  const json doc = ParseObject(line);
  const auto vec = doc.find("vector");
  if (vec == doc.end() || !vec->is_array() || vec->empty()) {
    throw Error(ErrorCode::kProtocol, "response lacks a non-empty \"vector\"");
  }
  FeatureVector out;
  out.values.reserve(vec->size());
  for (const json& v : *vec) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kProtocol, "non-numeric vector component");
    }
    out.values.push_back(v.get<double>());
  }
  return out;
}

BridgeInfo ParseInfoResponse(std::string_view line) {
  const json doc = ParseObject(line);
  const auto dim = doc.find("dim");
  if (dim == doc.end() || !dim->is_number_integer() || dim->get<int>() <= 0) {
    throw Error(ErrorCode::kProtocol, "info response lacks a positive \"dim\"");
  }
  BridgeInfo info;
  info.dim = dim->get<int>();
  if (const auto model = doc.find("model");
      model != doc.end() && model->is_string()) {
    info.model = model->get<std::string>();
  }
  return info;
}

std::string Base64Encode(std::span<const uint8_t> bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const uint32_t n = (uint32_t{bytes[i]} << 16) | (uint32_t{bytes[i + 1]} << 8) |
                       bytes[i + 2];
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += kAlphabet[n & 63];
  }
  if (i < bytes.size()) {
    uint32_t n = uint32_t{bytes[i]} << 16;
    if (i + 1 < bytes.size()) n |= uint32_t{bytes[i + 1]} << 8;
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += i + 1 < bytes.size() ? kAlphabet[(n >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

}  // namespace wire

namespace {

constexpr int kReadTimeoutSeconds = 60;

// Socket-backed channel: a TCP connection or one end of a socketpair whose
// other end is a child's stdin/stdout.
class SocketTransport final : public LineTransport {
 public:
  SocketTransport(int fd, pid_t child) : fd_(fd), child_(child) {
    timeval tv{kReadTimeoutSeconds, 0};
    setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  }

  ~SocketTransport() override {
    ::close(fd_);
    if (child_ > 0) Reap();
  }

  void WriteLine(std::string_view line) override {
    std::string data(line);
    data += '\n';
    size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n =
          ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::kTransport,
                    std::string("send failed: ") + std::strerror(errno));
      }
      sent += static_cast<size_t>(n);
    }
  }

  std::string ReadLine() override {
    for (;;) {
      if (const size_t nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n == 0) throw Error(ErrorCode::kTransport, "bridge closed the connection");
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::kTransport,
                    std::string("recv failed: ") + std::strerror(errno));
      }
      buffer_.append(chunk, static_cast<size_t>(n));
    }
  }

 private:
  void Reap() {
    for (int i = 0; i < 100; ++i) {
      if (::waitpid(child_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(child_, SIGKILL);
    ::waitpid(child_, nullptr, 0);
  }

  int fd_;
  pid_t child_;
  std::string buffer_;
};

std::unique_ptr<LineTransport> ConnectTcp(std::string_view host_port) {
  const size_t colon = host_port.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == host_port.size()) {
    throw Error(ErrorCode::kTransport,
                "endpoint must be host:port, got '" + std::string(host_port) + "'");
  }
  const std::string host(host_port.substr(0, colon));
  const std::string port(host_port.substr(colon + 1));
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &result);
      rc != 0) {
    throw Error(ErrorCode::kTransport,
                "cannot resolve " + host + ": " + gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(result);
  if (fd < 0) {
    throw Error(ErrorCode::kTransport,
                "cannot connect to " + std::string(host_port));
  }
  return std::make_unique<SocketTransport>(fd, -1);
}

std::unique_ptr<LineTransport> SpawnStdio(const std::string& command) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, sv) != 0) {
    throw Error(ErrorCode::kTransport,
                std::string("socketpair failed: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw Error(ErrorCode::kTransport,
                std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(sv[1], STDIN_FILENO);
    ::dup2(sv[1], STDOUT_FILENO);
    ::close(sv[0]);
    ::close(sv[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(sv[1]);
  return std::make_unique<SocketTransport>(sv[0], pid);
}

}  // namespace

std::unique_ptr<LineTransport> OpenTransport(std::string_view endpoint) {
  constexpr std::string_view kTcp = "tcp://";
  constexpr std::string_view kStdio = "stdio:";
  if (endpoint.starts_with(kStdio)) {
    return SpawnStdio(std::string(endpoint.substr(kStdio.size())));
  }
  if (endpoint.starts_with(kTcp)) endpoint.remove_prefix(kTcp.size());
  return ConnectTcp(endpoint);
}

BridgeClient::BridgeClient(std::unique_ptr<LineTransport> transport)
    : transport_(std::move(transport)) {}

BridgeClient BridgeClient::Connect(std::string_view endpoint) {
  return BridgeClient(OpenTransport(endpoint));
}

std::string BridgeClient::RoundTrip(const std::string& request) {
  ++requests_sent_;
  transport_->WriteLine(request);
  return transport_->ReadLine();
}

FeatureVector BridgeClient::CheckDim(FeatureVector v) {
  if (!dim_) {
    dim_ = v.dim();
  } else if (*dim_ != v.dim()) {
    throw Error(ErrorCode::kProtocol,
                "embedding dim changed within a session: " +
                    std::to_string(*dim_) + " -> " + std::to_string(v.dim()));
  }
  return v;
}

wire::BridgeInfo BridgeClient::Info() {
  return wire::ParseInfoResponse(RoundTrip(wire::InfoRequest()));
}

FeatureVector BridgeClient::EmbedImage(const envs::ObservationRaster& raster) {
  if (raster.png.empty()) {
    throw Error(ErrorCode::kProtocol, "empty image");
  }
  return CheckDim(
      wire::ParseVectorResponse(RoundTrip(wire::EmbedImageRequest(raster.png))));
}

FeatureVector BridgeClient::EmbedText(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kProtocol, "empty text");
  if (const auto it = text_cache_.find(text); it != text_cache_.end()) {
    return it->second;
  }
  FeatureVector v =
      CheckDim(wire::ParseVectorResponse(RoundTrip(wire::EmbedTextRequest(text))));
  text_cache_.emplace(text, v);
  return v;
}

FeatureVector RemoteEmbedImage(const envs::ObservationRaster& raster,
                               BridgeClient& client) {
  return client.EmbedImage(raster);
}

FeatureVector RemoteEmbedText(const std::string& text, BridgeClient& client) {
  return client.EmbedText(text);
}

}  // namespace gradseek::similarity
