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

#ifndef GRADSEEK_SIMILARITY_TEXT_PAIR_H_
#define GRADSEEK_SIMILARITY_TEXT_PAIR_H_

#include <string>

namespace gradseek {

// Instruction text T1 and the text describing the opposite action T2.
struct TextPair {
  std::string instruction;
  std::string opposite;

  // Both non-empty and distinct.
  bool valid() const {
    return !instruction.empty() && !opposite.empty() && instruction != opposite;
  }

  friend bool operator==(const TextPair&, const TextPair&) = default;
};

}  // namespace gradseek

#endif  // GRADSEEK_SIMILARITY_TEXT_PAIR_H_
