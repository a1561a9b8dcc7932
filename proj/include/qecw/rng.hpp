// Copyright 2026 The qecw Authors
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

#pragma once

#include <cstdint>

namespace qecw {

// Splitmix64 step: advances the state by a fixed odd constant and returns a
// scrambled copy.  Cheap enough to seed one independent stream per Monte
// Carlo trial, which keeps results identical for any worker count.
inline uint64_t splitmix64_next(uint64_t &state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic pseudo-random stream.  Satisfies UniformRandomBitGenerator,
// so it can stand in anywhere a std engine would.  All sampling in this
// library goes through explicit arithmetic on these draws (never through
// std distributions), so outputs are bit-identical across platforms.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~0ull; }

  uint64_t operator()() { return splitmix64_next(state_); }

  uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound).
  uint64_t uniform_below(uint64_t bound) { return next_u64() % bound; }

 private:
  uint64_t state_;
};

// Derives the seed of an independent stream from a master seed and a stream
// index (counter hash).  Used for per-trial and per-sweep-point streams.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  uint64_t s = master ^ (0xa0761d6478bd642full * (index + 1));
  return splitmix64_next(s);
}

inline Rng derive_stream(uint64_t master, uint64_t index) {
  return Rng(derive_seed(master, index));
}

}  // namespace qecw
