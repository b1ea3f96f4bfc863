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

#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"

using namespace qocsvm;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string &name)
        : path(std::filesystem::temp_directory_path() / (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {}
    ~TempFile() { std::filesystem::remove(path); }
};

RandomizedContext sample_context() {
    Matrix X(5, 3);
    Rng rng(4);
    std::normal_distribution<double> g(0, 0.4);
    for (auto &v : X.data()) v = g(rng);
    KernelConfig c;
    c.kind = KernelKind::randomized;
    c.rm_settings = 6;
    c.rm_shots = 250;
    return *build_gram_train(X, c, 17).context.randomized;
}

}  // namespace

TEST(signature_cache, bit_exact_round_trip) {
    TempFile f("qocsvm_sig_roundtrip");
    const RandomizedContext ctx = sample_context();
    save_signature_cache(f.path, ctx);
    const RandomizedContext back = load_signature_cache(f.path);
    EXPECT_EQ(back.fingerprint, ctx.fingerprint);
    EXPECT_EQ(back.settings, ctx.settings);
    EXPECT_EQ(back.signatures, ctx.signatures);
    ASSERT_EQ(back.purities.size(), ctx.purities.size());
    for (std::size_t i = 0; i < ctx.purities.size(); ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(back.purities[i]), std::bit_cast<std::uint64_t>(ctx.purities[i]));
    }
}

TEST(signature_cache, rejects_bad_magic_and_truncation) {
    TempFile f("qocsvm_sig_bad");
    {
        std::ofstream out(f.path, std::ios::binary);
        out << "NOPE";
    }
    EXPECT_THROW(load_signature_cache(f.path), CacheFormatError);

    save_signature_cache(f.path, sample_context());
    const auto size = std::filesystem::file_size(f.path);
    std::filesystem::resize_file(f.path, size - 3);
    EXPECT_THROW(load_signature_cache(f.path), CacheFormatError);
}

TEST(signature_cache, rejects_tampered_settings) {
    TempFile f("qocsvm_sig_tamper");
    save_signature_cache(f.path, sample_context());
    {
        // flip a byte inside the first unitary; header is 4 + 4 + 4 + 4 + 8 + 8 + 8 bytes
        std::fstream io(f.path, std::ios::binary | std::ios::in | std::ios::out);
        io.seekp(40 + 3);
        io.put('\x7f');
    }
    EXPECT_THROW(load_signature_cache(f.path), CacheFormatError);
}

TEST(signature_cache, rejects_trailing_bytes) {
    TempFile f("qocsvm_sig_trailing");
    save_signature_cache(f.path, sample_context());
    {
        std::ofstream out(f.path, std::ios::binary | std::ios::app);
        out.put('x');
    }
    EXPECT_THROW(load_signature_cache(f.path), CacheFormatError);
}
