// Copyright 2026 The qocsvm Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qocsvm {

using Rng = std::mt19937_64;

/// Purposes for derived streams. Mixed into the stream key so that, e.g., the
/// signature stream of point 3 never coincides with the pair stream (3, x).
enum class StreamTag : std::uint64_t {
    haar_settings = 1,
    train_signature = 2,
    test_signature = 3,
    train_pair = 4,
    cross_pair = 5,
    solver = 6,
    ensemble = 7,
    component = 8,
    split = 9,
    synthetic = 10,
};

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Seed for the sub-stream identified by (root, tag, keys...). Pure function of
/// its arguments, so work can be scheduled in any order.
inline std::uint64_t derive_seed(std::uint64_t root, StreamTag tag,
                                 std::initializer_list<std::uint64_t> keys = {}) {
    std::uint64_t h = detail::splitmix64(root ^ 0x5851F42D4C957F2DULL);
    h = detail::splitmix64(h ^ static_cast<std::uint64_t>(tag));
    for (auto k : keys) {
        h = detail::splitmix64(h ^ k);
    }
    return h;
}

inline Rng make_stream(std::uint64_t root, StreamTag tag,
                       std::initializer_list<std::uint64_t> keys = {}) {
    return Rng(derive_seed(root, tag, keys));
}

}  // namespace qocsvm
