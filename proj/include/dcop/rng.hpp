// Copyright 2026 The dcopbench Authors
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

#ifndef DCOP_RNG_HPP_
#define DCOP_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace dcop {

// Seeded random source. Draws are derived from the raw 64-bit engine output
// only, so sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n). Requires n > 0.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over the bytes of `text`, finalized with mix64. Stable across
// platforms and releases; used for every derived seed.
std::uint64_t stable_hash(std::string_view text);

// Hashes `base` together with an ordered list of labels.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::string_view> parts);

}  // namespace dcop

#endif  // DCOP_RNG_HPP_
