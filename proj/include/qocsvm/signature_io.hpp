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

// Binary cache for randomized-measurement signatures.
//
// Layout (little-endian):
//   char[4]  magic "QRMS"
//   u32      format version (1)
//   u32      num_qubits d
//   u32      settings r
//   u64      shots per setting s
//   u64      number of points n
//   u64      settings fingerprint
//   f64[r*d*8]  unitaries, per setting per qubit: re/im of u00 u01 u10 u11
//   f64[n]   purity estimates
//   u64[n*r*2^d] outcome counts
//
// Doubles are written as their IEEE-754 bit patterns, so a load returns
// exactly what was saved.

#pragma once

#include <filesystem>
#include <stdexcept>

#include "qocsvm/kernel.hpp"

namespace qocsvm {

class CacheFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kSignatureCacheVersion = 1;

void save_signature_cache(const std::filesystem::path &path, const RandomizedContext &context);
RandomizedContext load_signature_cache(const std::filesystem::path &path);

}  // namespace qocsvm
