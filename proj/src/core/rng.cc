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

#include "gradseek/core/rng.h"

#include <cmath>
#include <numbers>

namespace gradseek {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;

}  // namespace

uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : seed_(seed),
      stream_(stream),
      key_(Mix64(Mix64(seed) ^ Mix64(stream * kStreamSalt + kGolden))) {}

uint64_t SeededRng::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double SeededRng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double SeededRng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform();
}

uint64_t SeededRng::UniformIndex(uint64_t n) {
  // Rejection sampling removes modulo bias.
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  uint64_t r;
  do {
    r = NextU64();
  } while (r >= limit);
  return r % n;
}

double SeededRng::Normal() {
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int SeededRng::Rademacher() { return (NextU64() >> 63) ? 1 : -1; }

SeededRng SeededRng::Derive(uint64_t child) const {
  return SeededRng(Mix64(key_ ^ Mix64(child + kGolden)), stream_ ^ child);
}

}  // namespace gradseek
