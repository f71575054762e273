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

// Echo-test bridge on stdin/stdout, for stdio: endpoints.
//   fake_bridge [--dim N] [--malformed] [--service-error] [--close-after N]

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "support/fake_bridge.h"

int main(int argc, char** argv) {
  gradseek::testing::FakeBridgeOptions options;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--dim") && i + 1 < argc) {
      options.dim = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--malformed")) {
      options.malformed = true;
    } else if (!std::strcmp(argv[i], "--service-error")) {
      options.service_error = true;
    } else if (!std::strcmp(argv[i], "--close-after") && i + 1 < argc) {
      options.close_after = std::atoi(argv[++i]);
    } else {
      std::cerr << "unknown flag " << argv[i] << "\n";
      return 2;
    }
  }
  gradseek::testing::FakeBridgeSession session(options);
  std::string line;
  while (std::getline(std::cin, line)) {
    const std::string reply = session.Respond(line);
    if (reply.empty()) return 0;
    std::cout << reply << std::endl;
  }
  return 0;
}
