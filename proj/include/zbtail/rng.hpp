// Copyright 2026 The zbtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZBTAIL_RNG_HPP_
#define ZBTAIL_RNG_HPP_

#include <cstdint>
#include <random>

namespace zbtail {

// Deterministic generator with explicit substreams. Two Rng instances built
// from the same (seed, stream) produce identical sequences on every platform;
// distinct stream ids give statistically independent sequences. Parallel
// workers each own one stream, so results do not depend on thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t u64();

  // Uniform double in [0, 1) using the top 53 bits.
  double unit();

  // Unbiased uniform integer in [0, n); n must be >= 1.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace zbtail

#endif  // ZBTAIL_RNG_HPP_
