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

#include "qocsvm/signature_io.hpp"

#include <fstream>

#include "qocsvm/binary_io.hpp"

namespace qocsvm {

void save_signature_cache(const std::filesystem::path &path, const RandomizedContext &ctx) {
    if (ctx.settings.empty()) throw std::invalid_argument("signature cache needs at least one setting");
    const std::size_t d = ctx.settings.front().num_qubits();
    const std::size_t r = ctx.settings.size();
    const std::size_t dim = std::size_t{1} << d;
    const std::uint64_t shots = ctx.signatures.empty() ? 0 : ctx.signatures.front().shots;
    if (ctx.purities.size() != ctx.signatures.size()) {
        throw std::invalid_argument("signature cache: purity count does not match signature count");
    }
    for (const auto &sig : ctx.signatures) {
        if (sig.num_qubits != d || sig.num_settings() != r || sig.shots != shots ||
            sig.settings_fingerprint != ctx.fingerprint) {
            throw std::invalid_argument("signature cache: signatures are not from one settings list");
        }
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write("QRMS", 4);
    binary::write_u32(out, kSignatureCacheVersion);
    binary::write_u32(out, static_cast<std::uint32_t>(d));
    binary::write_u32(out, static_cast<std::uint32_t>(r));
    binary::write_u64(out, shots);
    binary::write_u64(out, ctx.signatures.size());
    binary::write_u64(out, ctx.fingerprint);
    for (const auto &setting : ctx.settings) {
        if (setting.num_qubits() != d) throw std::invalid_argument("signature cache: ragged settings");
        for (const auto &u : setting.unitaries) {
            for (const auto &z : u) {
                binary::write_f64(out, z.real());
                binary::write_f64(out, z.imag());
            }
        }
    }
    for (double p : ctx.purities) binary::write_f64(out, p);
    for (const auto &sig : ctx.signatures) {
        for (const auto &counts : sig.counts) {
            if (counts.size() != dim) throw std::invalid_argument("signature cache: wrong outcome count");
            for (auto c : counts) binary::write_u64(out, c);
        }
    }
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

RandomizedContext load_signature_cache(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    binary::expect_magic<CacheFormatError>(in, "QRMS");
    const auto version = binary::read_u32<CacheFormatError>(in);
    if (version != kSignatureCacheVersion) {
        throw CacheFormatError("unsupported signature cache version " + std::to_string(version));
    }
    const std::size_t d = binary::read_u32<CacheFormatError>(in);
    const std::size_t r = binary::read_u32<CacheFormatError>(in);
    const std::uint64_t shots = binary::read_u64<CacheFormatError>(in);
    const std::uint64_t n = binary::read_u64<CacheFormatError>(in);
    if (d == 0 || d > 14 || r == 0) throw CacheFormatError("signature cache header is out of range");
    RandomizedContext ctx;
    ctx.fingerprint = binary::read_u64<CacheFormatError>(in);
    ctx.settings.resize(r);
    for (auto &setting : ctx.settings) {
        setting.unitaries.resize(d);
        for (auto &u : setting.unitaries) {
            for (auto &z : u) {
                const double re = binary::read_f64<CacheFormatError>(in);
                const double im = binary::read_f64<CacheFormatError>(in);
                z = {re, im};
            }
        }
    }
    if (settings_fingerprint(ctx.settings) != ctx.fingerprint) {
        throw CacheFormatError("signature cache fingerprint does not match its settings");
    }
    ctx.purities.resize(n);
    for (auto &p : ctx.purities) p = binary::read_f64<CacheFormatError>(in);
    const std::size_t dim = std::size_t{1} << d;
    ctx.signatures.resize(n);
    for (auto &sig : ctx.signatures) {
        sig.num_qubits = d;
        sig.shots = shots;
        sig.settings_fingerprint = ctx.fingerprint;
        sig.counts.assign(r, std::vector<std::uint64_t>(dim));
        for (auto &counts : sig.counts) {
            for (auto &c : counts) c = binary::read_u64<CacheFormatError>(in);
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw CacheFormatError("trailing bytes after signature cache payload");
    }
    return ctx;
}

}  // namespace qocsvm
