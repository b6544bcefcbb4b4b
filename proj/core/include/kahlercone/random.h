// Copyright 2026 The kahlercone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KAHLERCONE_RANDOM_H_
#define KAHLERCONE_RANDOM_H_

#include <cstdint>
#include <random>

namespace kahlercone {

// Seeded generator with distribution code written out here: the engine's
// output sequence is fixed by the standard, the std distributions are not,
// and reports must be byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [lo, hi], inclusive, by rejection.
  long UniformInt(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<long>(Next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = Next();
    } while (draw >= limit);
    return lo + static_cast<long>(draw % span);
  }

  // Uniform on [0, 1).
  double UniformReal() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  bool Coin() { return (Next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kahlercone

#endif  // KAHLERCONE_RANDOM_H_
