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

// Inner-loop kernels shared by the simulator and the kernel/solver code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at runtime from the CPU feature flags and can be overridden with
// set_backend() or the QOCSVM_SIMD environment variable (scalar|avx2|neon).
//
// Element-wise kernels (apply_1q, multiply_diagonal, squared_magnitudes) give
// bit-identical results on every backend. Reductions (dot, inner_product,
// squared_distance, matvec) sum in a different order on the vector backends
// and agree with the reference only to rounding.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qocsvm::simd {

using cplx = std::complex<double>;

/// Row-major 2x2 complex gate {u00, u01, u10, u11}.
using Gate2 = std::array<cplx, 4>;

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);
Backend parse_backend(std::string_view name);

struct KernelTable {
    Backend backend;
    /// Applies `gate` to the amplitude pairs (i, i + stride) with (i & stride) == 0.
    void (*apply_1q)(cplx *amps, std::size_t dim, std::size_t stride, const Gate2 &gate);
    /// amps[i] *= diag[i]
    void (*multiply_diagonal)(cplx *amps, const cplx *diag, std::size_t n);
    /// sum_i conj(a[i]) * b[i]
    cplx (*inner_product)(const cplx *a, const cplx *b, std::size_t n);
    /// out[i] = |amps[i]|^2
    void (*squared_magnitudes)(const cplx *amps, double *out, std::size_t n);
    double (*dot)(const double *a, const double *b, std::size_t n);
    double (*squared_distance)(const double *a, const double *b, std::size_t n);
    /// y = M x with M row-major rows x cols.
    void (*matvec)(const double *m, const double *x, double *y, std::size_t rows, std::size_t cols);
};

bool backend_supported(Backend b);

/// Kernel table for a specific backend; throws std::invalid_argument if the
/// backend was not compiled in or the CPU lacks the instructions.
const KernelTable &kernels(Backend b);

/// Kernel table currently in use.
const KernelTable &kernels();

Backend active_backend();
void set_backend(Backend b);

/// Best backend available on this machine, honoring QOCSVM_SIMD.
Backend detect_backend();

namespace scalar {
extern const KernelTable table;
}
#if defined(QOCSVM_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(QOCSVM_HAVE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

// Span front-ends over the active table.

void apply_1q(std::span<cplx> amps, std::size_t stride, const Gate2 &gate);
void multiply_diagonal(std::span<cplx> amps, std::span<const cplx> diag);
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b);
void squared_magnitudes(std::span<const cplx> amps, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
void matvec(std::span<const double> m, std::span<const double> x, std::span<double> y);

}  // namespace qocsvm::simd
