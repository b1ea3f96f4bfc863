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

// NEON kernels for aarch64. A float64x2_t holds exactly one complex amplitude.

#include "qocsvm/simd/kernels.hpp"

#include <arm_neon.h>

namespace qocsvm::simd::neon {
namespace {

inline float64x2_t load1(const cplx *p) { return vld1q_f64(reinterpret_cast<const double *>(p)); }
inline void store1(cplx *p, float64x2_t v) { vst1q_f64(reinterpret_cast<double *>(p), v); }

// (xr*gr - xi*gi, xi*gr + xr*gi), same rounding sequence as the reference.
inline float64x2_t cmul(float64x2_t x, double gr, double gi) {
    const float64x2_t p = vmulq_n_f64(x, gr);                  // (xr*gr, xi*gr)
    const float64x2_t q = vmulq_n_f64(vextq_f64(x, x, 1), gi);  // (xi*gi, xr*gi)
    const float64x2_t sign = {-1.0, 1.0};
    return vaddq_f64(p, vmulq_f64(q, sign));
}

void apply_1q(cplx *amps, std::size_t dim, std::size_t stride, const Gate2 &g) {
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const float64x2_t a0 = load1(amps + i);
            const float64x2_t a1 = load1(amps + i + stride);
            store1(amps + i, vaddq_f64(cmul(a0, g[0].real(), g[0].imag()), cmul(a1, g[1].real(), g[1].imag())));
            store1(amps + i + stride,
                   vaddq_f64(cmul(a0, g[2].real(), g[2].imag()), cmul(a1, g[3].real(), g[3].imag())));
        }
    }
}

void multiply_diagonal(cplx *amps, const cplx *diag, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        store1(amps + i, cmul(load1(amps + i), diag[i].real(), diag[i].imag()));
    }
}

cplx inner_product(const cplx *a, const cplx *b, std::size_t n) {
    float64x2_t re_acc = vdupq_n_f64(0.0);
    float64x2_t im_acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = load1(a + i);
        const float64x2_t vb = load1(b + i);
        re_acc = vaddq_f64(re_acc, vmulq_f64(va, vb));
        im_acc = vaddq_f64(im_acc, vmulq_f64(va, vextq_f64(vb, vb, 1)));
    }
    return {vgetq_lane_f64(re_acc, 0) + vgetq_lane_f64(re_acc, 1),
            vgetq_lane_f64(im_acc, 0) - vgetq_lane_f64(im_acc, 1)};
}

void squared_magnitudes(const cplx *amps, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t x = load1(amps + i);
        out[i] = vpaddd_f64(vmulq_f64(x, x));
    }
}

double dot(const double *a, const double *b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double squared_distance(const double *a, const double *b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

void matvec(const double *m, const double *x, double *y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dot(m + r * cols, x, cols);
    }
}

}  // namespace

const KernelTable table{Backend::neon,      apply_1q, multiply_diagonal, inner_product,
                        squared_magnitudes, dot,      squared_distance,  matvec};

}  // namespace qocsvm::simd::neon
