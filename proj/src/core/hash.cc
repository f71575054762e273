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

#include "gradseek/core/hash.h"

#include <bit>
#include <cstdio>

namespace gradseek {
namespace {

constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

}  // namespace

Fnv1a& Fnv1a::Update(std::span<const uint8_t> bytes) {
  for (uint8_t b : bytes) {
    state_ ^= b;
    state_ *= kFnvPrime;
  }
  return *this;
}

Fnv1a& Fnv1a::Update(std::string_view text) {
  for (char c : text) {
    state_ ^= static_cast<uint8_t>(c);
    state_ *= kFnvPrime;
  }
  return *this;
}

Fnv1a& Fnv1a::Update(uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (value >> (8 * i)) & 0xff;
    state_ *= kFnvPrime;
  }
  return *this;
}

Fnv1a& Fnv1a::Update(double value) {
  return Update(std::bit_cast<uint64_t>(value));
}

std::string Fnv1a::Hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(state_));
  return buf;
}

std::string HexDigest(std::string_view text) {
  return Fnv1a().Update(text).Hex();
}

}  // namespace gradseek
