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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qocsvm/simd/kernels.hpp"

namespace qocsvm::simd {
namespace {

bool cpu_has_avx2() {
#if defined(QOCSVM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const KernelTable *> &active_table() {
    static std::atomic<const KernelTable *> table{&kernels(detect_backend())};
    return table;
}

void require_same_size(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
        case Backend::neon:
            return "neon";
    }
    return "unknown";
}

Backend parse_backend(std::string_view name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "neon") return Backend::neon;
    throw std::invalid_argument("unknown SIMD backend '" + std::string(name) + "'");
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
            return cpu_has_avx2();
        case Backend::neon:
#if defined(QOCSVM_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable &kernels(Backend b) {
    if (!backend_supported(b)) {
        throw std::invalid_argument("SIMD backend '" + std::string(backend_name(b)) +
                                    "' is not available on this machine");
    }
    switch (b) {
#if defined(QOCSVM_HAVE_AVX2)
        case Backend::avx2:
            return avx2::table;
#endif
#if defined(QOCSVM_HAVE_NEON)
        case Backend::neon:
            return neon::table;
#endif
        default:
            return scalar::table;
    }
}

Backend detect_backend() {
    if (const char *env = std::getenv("QOCSVM_SIMD"); env != nullptr && *env != '\0') {
        return parse_backend(env);
    }
    if (backend_supported(Backend::avx2)) return Backend::avx2;
    if (backend_supported(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

const KernelTable &kernels() { return *active_table().load(std::memory_order_acquire); }

Backend active_backend() { return kernels().backend; }

void set_backend(Backend b) { active_table().store(&kernels(b), std::memory_order_release); }

void apply_1q(std::span<cplx> amps, std::size_t stride, const Gate2 &gate) {
    if (stride == 0 || amps.size() % (2 * stride) != 0) {
        throw std::invalid_argument("apply_1q: stride does not divide the state dimension");
    }
    kernels().apply_1q(amps.data(), amps.size(), stride, gate);
}

void multiply_diagonal(std::span<cplx> amps, std::span<const cplx> diag) {
    require_same_size(amps.size(), diag.size(), "multiply_diagonal");
    kernels().multiply_diagonal(amps.data(), diag.data(), amps.size());
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    require_same_size(a.size(), b.size(), "inner_product");
    return kernels().inner_product(a.data(), b.data(), a.size());
}

void squared_magnitudes(std::span<const cplx> amps, std::span<double> out) {
    require_same_size(amps.size(), out.size(), "squared_magnitudes");
    kernels().squared_magnitudes(amps.data(), out.data(), amps.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "dot");
    return kernels().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_size(a.size(), b.size(), "squared_distance");
    return kernels().squared_distance(a.data(), b.data(), a.size());
}

void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y) {
    if (m.size() != x.size() * y.size()) {
        throw std::invalid_argument("matvec: matrix size does not match vector lengths");
    }
    kernels().matvec(m.data(), x.data(), y.data(), y.size(), x.size());
}

}  // namespace qocsvm::simd
