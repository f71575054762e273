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

#ifndef GRADSEEK_CORE_HASH_H_
#define GRADSEEK_CORE_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace gradseek {

// FNV-1a 64-bit. Used for config digests and trajectory hashes; doubles are
// hashed by bit pattern so replay comparisons are exact.
class Fnv1a {
 public:
  Fnv1a& Update(std::span<const uint8_t> bytes);
  Fnv1a& Update(std::string_view text);
  Fnv1a& Update(double value);
  Fnv1a& Update(uint64_t value);

  uint64_t value() const { return state_; }
  std::string Hex() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string HexDigest(std::string_view text);

}  // namespace gradseek

#endif  // GRADSEEK_CORE_HASH_H_
