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

// Reference kernels. Complex arithmetic is spelled out on real/imaginary parts
// so that the vector variants can reproduce it operation for operation.

#include "qocsvm/simd/kernels.hpp"

namespace qocsvm::simd::scalar {
namespace {

void apply_1q(cplx *amps, std::size_t dim, std::size_t stride, const Gate2 &g) {
    const double g00r = g[0].real(), g00i = g[0].imag();
    const double g01r = g[1].real(), g01i = g[1].imag();
    const double g10r = g[2].real(), g10i = g[2].imag();
    const double g11r = g[3].real(), g11i = g[3].imag();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const double a0r = amps[i].real(), a0i = amps[i].imag();
            const double a1r = amps[i + stride].real(), a1i = amps[i + stride].imag();
            const double r0 = (a0r * g00r - a0i * g00i) + (a1r * g01r - a1i * g01i);
            const double i0 = (a0i * g00r + a0r * g00i) + (a1i * g01r + a1r * g01i);
            const double r1 = (a0r * g10r - a0i * g10i) + (a1r * g11r - a1i * g11i);
            const double i1 = (a0i * g10r + a0r * g10i) + (a1i * g11r + a1r * g11i);
            amps[i] = {r0, i0};
            amps[i + stride] = {r1, i1};
        }
    }
}

void multiply_diagonal(cplx *amps, const cplx *diag, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = amps[i].real(), ai = amps[i].imag();
        const double dr = diag[i].real(), di = diag[i].imag();
        amps[i] = {ar * dr - ai * di, ai * dr + ar * di};
    }
}

cplx inner_product(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void squared_magnitudes(const cplx *amps, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = amps[i].real(), im = amps[i].imag();
        out[i] = r * r + im * im;
    }
}

double dot(const double *a, const double *b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double squared_distance(const double *a, const double *b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void matvec(const double *m, const double *x, double *y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dot(m + r * cols, x, cols);
    }
}

}  // namespace

const KernelTable table{Backend::scalar,    apply_1q, multiply_diagonal, inner_product,
                        squared_magnitudes, dot,      squared_distance,  matvec};

}  // namespace qocsvm::simd::scalar
