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

#include <cstdlib>
#include <string>

#include "gradseek/core/error.h"
#include "gradseek/envs/render.h"
#include "gradseek/harness/trial.h"
#include "gradseek/similarity/oracle.h"
#include "gradseek/similarity/remote.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/fake_bridge.h"

namespace gradseek::similarity {
namespace {

using nlohmann::json;
using testing::EchoVector;
using testing::FakeBridgeOptions;
using testing::FakeTcpBridge;

std::string StdioEndpoint(const std::string& flags = "") {
  return std::string("stdio:") + FAKE_BRIDGE_PATH + (flags.empty() ? "" : " " + flags);
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(WireTest, RequestsAreSingleLineJson) {
  const json text = json::parse(wire::EmbedTextRequest("open a\ndrawer"));
  EXPECT_EQ(text["op"], "embed_text");
  EXPECT_EQ(text["text"], "open a\ndrawer");
  EXPECT_EQ(wire::EmbedTextRequest("x").find('\n'), std::string::npos);
  const std::vector<uint8_t> png = {0x89, 'P', 'N', 'G'};
  const json image = json::parse(wire::EmbedImageRequest(png));
  EXPECT_EQ(image["op"], "embed_image");
  EXPECT_EQ(image["png_b64"], "iVBORw==");
  EXPECT_EQ(json::parse(wire::InfoRequest())["op"], "info");
}

TEST(WireTest, Base64MatchesReference) {
  auto enc = [](std::string s) {
    return wire::Base64Encode(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
}

TEST(WireTest, ResponseParsing) {
  const FeatureVector v = wire::ParseVectorResponse(R"({"ok":true,"vector":[1,2.5]})");
  EXPECT_EQ(v.values, (std::vector<double>{1, 2.5}));
  EXPECT_EQ(CodeOf([] { wire::ParseVectorResponse("{nope"); }),
            ErrorCode::kProtocol);
  EXPECT_EQ(CodeOf([] { wire::ParseVectorResponse(R"({"ok":true})"); }),
            ErrorCode::kProtocol);
  EXPECT_EQ(CodeOf([] {
              wire::ParseVectorResponse(R"({"ok":false,"error":"boom"})");
            }),
            ErrorCode::kService);
  try {
    wire::ParseVectorResponse(R"({"ok":false,"error":"boom"})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
  const wire::BridgeInfo info =
      wire::ParseInfoResponse(R"({"ok":true,"dim":512,"model":"m"})");
  EXPECT_EQ(info.dim, 512);
  EXPECT_EQ(info.model, "m");
}

class BridgeClientTest : public ::testing::TestWithParam<bool> {
 protected:
  // Parameter: true for TCP, false for stdio.
  std::string Endpoint(FakeBridgeOptions options = {}) {
    if (GetParam()) {
      tcp_ = std::make_unique<FakeTcpBridge>(options);
      return tcp_->endpoint();
    }
    std::string flags;
    if (options.malformed) flags += " --malformed";
    if (options.service_error) flags += " --service-error";
    if (options.close_after >= 0) {
      flags += " --close-after " + std::to_string(options.close_after);
    }
    return StdioEndpoint(flags);
  }
  std::unique_ptr<FakeTcpBridge> tcp_;
};

TEST_P(BridgeClientTest, EchoVectorsAreReturnedExactly) {
  BridgeClient client = BridgeClient::Connect(Endpoint());
  EXPECT_EQ(client.Info().dim, 8);
  const envs::TaskConfig task = envs::DefaultTask(envs::TaskId::kDrawerOpen);
  SeededRng rng(1, 1);
  const envs::ObservationRaster raster =
      envs::RenderObservation(envs::SampleInitialState(task, rng), task);
  const FeatureVector v = RemoteEmbedImage(raster, client);
  EXPECT_EQ(v.values, EchoVector("embed_image:" + wire::Base64Encode(raster.png), 8));
  EXPECT_EQ(RemoteEmbedImage(raster, client), v);
  EXPECT_EQ(client.session_dim(), 8u);
}

TEST_P(BridgeClientTest, TextIsCached) {
  BridgeClient client = BridgeClient::Connect(Endpoint());
  const std::string prompt = "open a drawer with a drawer handle";
  const FeatureVector a = RemoteEmbedText(prompt, client);
  const size_t sent = client.requests_sent();
  const FeatureVector b = RemoteEmbedText(prompt, client);
  EXPECT_EQ(a, b);
  EXPECT_EQ(client.requests_sent(), sent);
  EXPECT_EQ(a.dim(), 8u);
  EXPECT_EQ(a.values, EchoVector("embed_text:" + prompt, 8));
}

TEST_P(BridgeClientTest, EmptyTextIsProtocolError) {
  BridgeClient client = BridgeClient::Connect(Endpoint());
  EXPECT_EQ(CodeOf([&] { client.EmbedText(""); }), ErrorCode::kProtocol);
  EXPECT_EQ(client.requests_sent(), 0u);
}

TEST_P(BridgeClientTest, MalformedResponseIsProtocolError) {
  FakeBridgeOptions options;
  options.malformed = true;
  BridgeClient client = BridgeClient::Connect(Endpoint(options));
  EXPECT_EQ(CodeOf([&] { client.EmbedText("abc"); }), ErrorCode::kProtocol);
}

TEST_P(BridgeClientTest, ServiceErrorSurfacesMessage) {
  FakeBridgeOptions options;
  options.service_error = true;
  BridgeClient client = BridgeClient::Connect(Endpoint(options));
  try {
    client.EmbedText("abc");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kService);
    EXPECT_NE(std::string(e.what()).find("model not loaded"), std::string::npos);
  }
}

TEST_P(BridgeClientTest, DroppedConnectionIsTransportError) {
  FakeBridgeOptions options;
  options.close_after = 1;
  BridgeClient client = BridgeClient::Connect(Endpoint(options));
  client.EmbedText("first");
  EXPECT_EQ(CodeOf([&] { client.EmbedText("second"); }), ErrorCode::kTransport);
}

INSTANTIATE_TEST_SUITE_P(Transports, BridgeClientTest, ::testing::Bool(),
                         [](const auto& info) {
                           return info.param ? "Tcp" : "Stdio";
                         });

TEST(BridgeClientTest, DimensionChangeMidSessionIsProtocolError) {
  FakeBridgeOptions options;
  options.change_dim_after = 1;
  FakeTcpBridge bridge(options);
  BridgeClient client = BridgeClient::Connect(bridge.endpoint());
  client.EmbedText("one");
  EXPECT_EQ(CodeOf([&] { client.EmbedText("two"); }), ErrorCode::kProtocol);
}

TEST(OpenTransportTest, UnreachableEndpointsAreTransportErrors) {
  EXPECT_EQ(CodeOf([] { OpenTransport("tcp://127.0.0.1:1"); }),
            ErrorCode::kTransport);
  EXPECT_EQ(CodeOf([] { OpenTransport("no-port-here"); }), ErrorCode::kTransport);
  EXPECT_EQ(CodeOf([] {
              auto t = OpenTransport("stdio:exit 0");
              t->WriteLine("{\"op\":\"info\"}");
              t->ReadLine();
            }),
            ErrorCode::kTransport);
}

TEST(RemoteOracleTest, TrialCompletesAgainstEchoBridge) {
  FakeTcpBridge bridge;
  const envs::TaskConfig task = envs::DefaultTask(envs::TaskId::kWindowClose);
  const harness::Method method =
      harness::Method::FromOracle(OracleConfig::Remote(bridge.endpoint()));
  envs::TaskConfig short_task = task;
  short_task.max_steps = 20;
  const harness::TrialRecord r = harness::RunTrial(
      short_task, harness::DefaultControllerConfig(task.id), method, 5);
  EXPECT_FALSE(r.errored) << r.error;
  EXPECT_EQ(r.steps_used, 20);
  // Two texts, then two images for each of the 10 comparisons.
  EXPECT_EQ(bridge.total_requests(), 2 + 20);
}

TEST(RemoteOracleTest, UnreachableBridgeMarksTrialErrored) {
  const envs::TaskConfig task = envs::DefaultTask(envs::TaskId::kDrawerClose);
  const harness::TrialRecord r = harness::RunTrial(
      task, harness::DefaultControllerConfig(task.id),
      harness::Method::FromOracle(OracleConfig::Remote("tcp://127.0.0.1:1")), 1);
  EXPECT_TRUE(r.errored);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.error.empty());
}

}  // namespace
}  // namespace gradseek::similarity
