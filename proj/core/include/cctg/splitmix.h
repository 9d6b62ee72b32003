// Copyright 2026 The CCTG Authors
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

#ifndef CCTG_SPLITMIX_H_
#define CCTG_SPLITMIX_H_

#include <cstdint>
#include <utility>
#include <vector>

namespace cctg {

// Deterministic 64-bit PRNG (splitmix64). Every random choice in the
// pipeline flows through this generator so that runs are reproducible
// from a single seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(Next()) * n) >> 64);
  }

  // Uniform draw in the half-open unit interval (0, 1].
  double UnitOpen() {
    return static_cast<double>((Next() >> 11) + 1) * 0x1p-53;
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

  // Derives an independent stream seed from (seed, salt).
  static std::uint64_t Mix(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 rng(seed + 0x9e3779b97f4a7c15ULL * (salt + 1));
    return rng.Next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace cctg

#endif  // CCTG_SPLITMIX_H_
