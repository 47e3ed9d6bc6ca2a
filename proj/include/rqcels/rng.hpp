// Copyright 2026 The rqcels Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RQCELS_RNG_HPP
#define RQCELS_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rqcels {

using Seed = std::uint64_t;
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based child seed. The result depends only on (parent, path), so
/// streams can be derived in any order or in parallel.
constexpr Seed derive_seed(Seed parent, std::initializer_list<std::uint64_t> path) {
    Seed s = mix64(parent);
    for (std::uint64_t k : path) {
        s = mix64(s ^ mix64(k + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

inline Engine make_engine(Seed seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    return Engine(seq);
}

// Stream tags used with derive_seed.
namespace stream {
inline constexpr std::uint64_t kTimes = 1;
inline constexpr std::uint64_t kReal = 2;
inline constexpr std::uint64_t kImag = 3;
inline constexpr std::uint64_t kBenchmark = 4;
inline constexpr std::uint64_t kReshuffle = 5;
inline constexpr std::uint64_t kMethod = 6;
inline constexpr std::uint64_t kTwirl = 7;
}  // namespace stream

}  // namespace rqcels

#endif  // RQCELS_RNG_HPP
