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

// AVX2 kernels. This translation unit is the only one built with -mavx2; it is
// entered only after the dispatcher has checked the CPU flag. Each __m256d
// holds two complex amplitudes as (re, im, re, im). No FMA: products are
// rounded before they are summed, exactly as in the scalar reference.

#include "qocsvm/simd/kernels.hpp"

#include <immintrin.h>

namespace qocsvm::simd::avx2 {
namespace {

inline __m256d load2(const cplx *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }
inline void store2(cplx *p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double *>(p), v); }

// (x * (gr + i gi)) lane-wise: even lanes xr*gr - xi*gi, odd lanes xi*gr + xr*gi.
inline __m256d cmul(__m256d x, __m256d gr, __m256d gi) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(x, gr), _mm256_mul_pd(swapped, gi));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void apply_1q(cplx *amps, std::size_t dim, std::size_t stride, const Gate2 &g) {
    if (stride < 2) {
        scalar::table.apply_1q(amps, dim, stride, g);
        return;
    }
    const __m256d g00r = _mm256_set1_pd(g[0].real()), g00i = _mm256_set1_pd(g[0].imag());
    const __m256d g01r = _mm256_set1_pd(g[1].real()), g01i = _mm256_set1_pd(g[1].imag());
    const __m256d g10r = _mm256_set1_pd(g[2].real()), g10i = _mm256_set1_pd(g[2].imag());
    const __m256d g11r = _mm256_set1_pd(g[3].real()), g11i = _mm256_set1_pd(g[3].imag());
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; i += 2) {
            const __m256d a0 = load2(amps + i);
            const __m256d a1 = load2(amps + i + stride);
            store2(amps + i, _mm256_add_pd(cmul(a0, g00r, g00i), cmul(a1, g01r, g01i)));
            store2(amps + i + stride, _mm256_add_pd(cmul(a0, g10r, g10i), cmul(a1, g11r, g11i)));
        }
    }
}

void multiply_diagonal(cplx *amps, const cplx *diag, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d d = load2(diag + i);
        const __m256d dr = _mm256_movedup_pd(d);
        const __m256d di = _mm256_permute_pd(d, 0b1111);
        store2(amps + i, cmul(load2(amps + i), dr, di));
    }
    if (i < n) {
        scalar::table.multiply_diagonal(amps + i, diag + i, n - i);
    }
}

cplx inner_product(const cplx *a, const cplx *b, std::size_t n) {
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        // (ar*br, ai*bi) and (ar*bi, ai*br)
        re_acc = _mm256_add_pd(re_acc, _mm256_mul_pd(va, vb));
        im_acc = _mm256_add_pd(im_acc, _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101)));
    }
    alignas(32) double re_l[4], im_l[4];
    _mm256_store_pd(re_l, re_acc);
    _mm256_store_pd(im_l, im_acc);
    double re = (re_l[0] + re_l[1]) + (re_l[2] + re_l[3]);
    double im = (im_l[0] - im_l[1]) + (im_l[2] - im_l[3]);
    if (i < n) {
        const cplx tail = scalar::table.inner_product(a + i, b + i, n - i);
        re += tail.real();
        im += tail.imag();
    }
    return {re, im};
}

void squared_magnitudes(const cplx *amps, double *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = load2(amps + i);
        const __m256d x1 = load2(amps + i + 2);
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(x0, x0), _mm256_mul_pd(x1, x1));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0b11011000));
    }
    if (i < n) {
        scalar::table.squared_magnitudes(amps + i, out + i, n - i);
    }
}

double dot(const double *a, const double *b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double squared_distance(const double *a, const double *b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double total = hsum(acc);
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

const KernelTable table{Backend::avx2,      apply_1q, multiply_diagonal, inner_product,
                        squared_magnitudes, dot,      squared_distance,  matvec};

}  // namespace qocsvm::simd::avx2
