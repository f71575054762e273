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

#ifndef GRADSEEK_CORE_RNG_H_
#define GRADSEEK_CORE_RNG_H_

#include <cstdint>

namespace gradseek {

// Counter-based generator: the n-th output is a pure function of
// (seed, stream, n), so sequences are identical on every platform and
// independent streams can be derived without shared state.
//
// Outputs use the SplitMix64 finalizer over a Weyl sequence keyed by the
// (seed, stream) pair.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }
  uint64_t counter() const { return counter_; }

  uint64_t NextU64();

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();
  double Uniform(double lo, double hi);

  // Uniform integer in [0, n). n must be > 0.
  uint64_t UniformIndex(uint64_t n);

  // Standard normal via Box-Muller. No cached second variate, so every call
  // consumes exactly two outputs.
  double Normal();

  // +1 or -1 with probability 1/2 each.
  int Rademacher();

  // Child generator for sub-stream `child` (e.g. an axis or trial index).
  // Does not advance this generator.
  SeededRng Derive(uint64_t child) const;

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

inline int Rademacher(SeededRng& rng) { return rng.Rademacher(); }

// SplitMix64 finalizer; exposed for hashing helpers.
uint64_t Mix64(uint64_t z);

}  // namespace gradseek

#endif  // GRADSEEK_CORE_RNG_H_
