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

// Little-endian primitive readers/writers for the versioned cache formats.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

namespace qocsvm::binary {


inline void write_u64(std::ostream &out, std::uint64_t v) {
    std::array<char, 8> bytes;
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
    out.write(bytes.data(), bytes.size());
}

inline void write_u32(std::ostream &out, std::uint32_t v) {
    std::array<char, 4> bytes;
    for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
    out.write(bytes.data(), bytes.size());
}

inline void write_f64(std::ostream &out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

template <class Error>
std::uint64_t read_u64(std::istream &in) {
    std::array<unsigned char, 8> bytes;
    if (!in.read(reinterpret_cast<char *>(bytes.data()), bytes.size())) {
        throw Error("unexpected end of file");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return v;
}

template <class Error>
std::uint32_t read_u32(std::istream &in) {
    std::array<unsigned char, 4> bytes;
    if (!in.read(reinterpret_cast<char *>(bytes.data()), bytes.size())) {
        throw Error("unexpected end of file");
    }
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
    return v;
}

template <class Error>
double read_f64(std::istream &in) {
    return std::bit_cast<double>(read_u64<Error>(in));
}

template <class Error>
void expect_magic(std::istream &in, const char (&magic)[5]) {
    char got[4];
    if (!in.read(got, 4) || std::memcmp(got, magic, 4) != 0) {
        throw Error(std::string("bad magic, expected '") + magic + "'");
    }
}

}  // namespace qocsvm::binary
