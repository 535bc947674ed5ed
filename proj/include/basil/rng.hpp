// Copyright 2026 The Authors.
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

#ifndef BASIL_RNG_HPP_
#define BASIL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace basil {

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t HashTag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sub-seed for (round, phase) under a master seed:
//   Mix64(Mix64(master) ^ Mix64(round ^ HashTag(phase)))
// Every random draw in an experiment goes through this, so two runs that
// share a master seed share every phase's stream.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t round,
                                   std::string_view phase) {
  return Mix64(Mix64(master) ^ Mix64(round ^ HashTag(phase)));
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from 53 random bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Standard normal draw by Box-Muller (one value per call).
inline double StandardNormal(Rng& rng) {
  double u1;
  do {
    u1 = UniformUnit(rng);
  } while (u1 <= 0.0);
  const double u2 = UniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925 * u2);
}

}  // namespace basil

#endif  // BASIL_RNG_HPP_
