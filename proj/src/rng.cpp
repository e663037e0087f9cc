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

#include "zbtail/rng.hpp"

#include <stdexcept>

namespace zbtail {
namespace {

// One step of the splitmix64 output function; advances state.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  // Hash (seed, stream) into four 32-bit words so nearby seeds and stream
  // ids land in unrelated engine states. Everything below is fully specified
  // by the standard, so sequences are identical across platforms.
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= 0x6a09e667f3bcc909ULL + stream;
  std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a),
                    static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::u64() { return engine_(); }

double Rng::unit() {
  return static_cast<double>(u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) {
    throw std::domain_error("Rng::below requires n >= 1");
  }
  // Rejection sampling: accept only the values above 2^64 mod n, which leave
  // a whole number of residue cycles, so every remainder is equally likely.
  const std::uint64_t threshold = (-n) % n;
  for (;;) {
    std::uint64_t v = u64();
    if (v >= threshold) {
      return v % n;
    }
  }
}

}  // namespace zbtail
