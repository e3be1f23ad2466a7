#include "echobench/kernels.hpp"

// AVX2 variants. Built with -mavx2 in this translation unit only; callers go
// through active_ops() which checks CPU support at runtime.
//
// Multiplies and adds are kept as separate _mm256_mul_ps/_mm256_add_ps (no
// FMA contraction) so that lane-parallel kernels reproduce the scalar
// reference bit-for-bit.

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define ECHOBENCH_X86 1
#else
#define ECHOBENCH_X86 0
#endif

#if ECHOBENCH_X86

#include <immintrin.h>

#include <cmath>

namespace echobench {
namespace {

void conv_border(const float* x, ptrdiff_t n, const float* k, ptrdiff_t klen,
                 float* out, ptrdiff_t i0, ptrdiff_t i1) {
    const ptrdiff_t h = klen / 2;
    for (ptrdiff_t i = i0; i < i1; ++i) {
        float acc = 0.0f;
        for (ptrdiff_t t = 0; t < klen; ++t) {
            ptrdiff_t j = i + t - h;
            if (j >= 0 && j < n) acc += k[t] * x[j];
        }
        out[i] = acc;
    }
}

void conv1d_same_f32_avx2(const float* x, size_t un, const float* k, size_t uklen, float* out) {
    const ptrdiff_t n = static_cast<ptrdiff_t>(un);
    const ptrdiff_t klen = static_cast<ptrdiff_t>(uklen);
    const ptrdiff_t h = klen / 2;
    const ptrdiff_t lo = h;               // first fully interior output
    const ptrdiff_t hi = n - klen + h;    // last fully interior output
    if (hi - lo + 1 < 8) {
        conv_border(x, n, k, klen, out, 0, n);
        return;
    }
    conv_border(x, n, k, klen, out, 0, lo);
    ptrdiff_t i = lo;
    for (; i + 8 <= hi + 1; i += 8) {
        __m256 acc = _mm256_setzero_ps();
        const float* base = x + i - h;
        for (ptrdiff_t t = 0; t < klen; ++t) {
            __m256 kv = _mm256_set1_ps(k[t]);
            __m256 xv = _mm256_loadu_ps(base + t);
            acc = _mm256_add_ps(acc, _mm256_mul_ps(kv, xv));
        }
        _mm256_storeu_ps(out + i, acc);
    }
    conv_border(x, n, k, klen, out, i, n);
}

void complex_mag_f32_avx2(const float* re, const float* im, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 r = _mm256_loadu_ps(re + i);
        __m256 m = _mm256_loadu_ps(im + i);
        __m256 s = _mm256_add_ps(_mm256_mul_ps(r, r), _mm256_mul_ps(m, m));
        _mm256_storeu_ps(out + i, _mm256_sqrt_ps(s));
    }
    for (; i < n; ++i) out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

void accumulate_power_f32_avx2(const float* re, const float* im, float* acc, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 r = _mm256_loadu_ps(re + i);
        __m256 m = _mm256_loadu_ps(im + i);
        __m256 a = _mm256_loadu_ps(acc + i);
        __m256 s = _mm256_add_ps(_mm256_mul_ps(r, r), _mm256_mul_ps(m, m));
        _mm256_storeu_ps(acc + i, _mm256_add_ps(a, s));
    }
    for (; i < n; ++i) acc[i] += re[i] * re[i] + im[i] * im[i];
}

template <bool Sub>
void spmv2_addsub_f32_avx2(const int32_t* col0, const float* w0, const float* w1,
                           size_t rows, const float* x, float* y) {
    size_t r = 0;
    for (; r + 8 <= rows; r += 8) {
        __m256i cols = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(col0 + r));
        // active rows: col0 >= 0
        __m256i active_i = _mm256_cmpgt_epi32(cols, _mm256_set1_epi32(-1));
        __m256 active = _mm256_castsi256_ps(active_i);
        __m256i safe_cols = _mm256_and_si256(cols, active_i);  // clamp empties to 0
        __m256 a = _mm256_mask_i32gather_ps(_mm256_setzero_ps(), x, safe_cols, active, 4);
        __m256i cols1 = _mm256_add_epi32(safe_cols, _mm256_and_si256(_mm256_set1_epi32(1), active_i));
        __m256 b = _mm256_mask_i32gather_ps(_mm256_setzero_ps(), x, cols1, active, 4);
        __m256 contrib = _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(w0 + r), a),
                                       _mm256_mul_ps(_mm256_loadu_ps(w1 + r), b));
        __m256 yv = _mm256_loadu_ps(y + r);
        __m256 updated = Sub ? _mm256_sub_ps(yv, contrib) : _mm256_add_ps(yv, contrib);
        _mm256_storeu_ps(y + r, _mm256_blendv_ps(yv, updated, active));
    }
    for (; r < rows; ++r) {
        int32_t c = col0[r];
        if (c < 0) continue;
        const float contrib = w0[r] * x[c] + w1[r] * x[c + 1];
        if (Sub)
            y[r] -= contrib;
        else
            y[r] += contrib;
    }
}

template <bool Sub>
void dense_matvec_addsub_f32_avx2(const float* m, size_t rows, size_t cols,
                                  const float* x, float* y) {
    for (size_t r = 0; r < rows; ++r) {
        const float* row = m + r * cols;
        __m256 vacc = _mm256_setzero_ps();
        size_t j = 0;
        for (; j + 8 <= cols; j += 8)
            vacc = _mm256_add_ps(vacc, _mm256_mul_ps(_mm256_loadu_ps(row + j),
                                                     _mm256_loadu_ps(x + j)));
        __m128 lo = _mm256_castps256_ps128(vacc);
        __m128 hi = _mm256_extractf128_ps(vacc, 1);
        __m128 s = _mm_add_ps(lo, hi);
        s = _mm_add_ps(s, _mm_movehl_ps(s, s));
        s = _mm_add_ss(s, _mm_shuffle_ps(s, s, 1));
        float acc = _mm_cvtss_f32(s);
        for (; j < cols; ++j) acc += row[j] * x[j];
        if (Sub)
            y[r] -= acc;
        else
            y[r] += acc;
    }
}

}  // namespace

const KernelOps& avx2_ops() {
    static const KernelOps ops = {
        "avx2",
        conv1d_same_f32_avx2,
        complex_mag_f32_avx2,
        accumulate_power_f32_avx2,
        spmv2_addsub_f32_avx2<false>,
        spmv2_addsub_f32_avx2<true>,
        dense_matvec_addsub_f32_avx2<false>,
        dense_matvec_addsub_f32_avx2<true>,
    };
    return ops;
}

}  // namespace echobench

#else  // non-x86: avx2_ops() must never be called; alias the scalar table

namespace echobench {
const KernelOps& avx2_ops() { return scalar_ops(); }
}  // namespace echobench

#endif
