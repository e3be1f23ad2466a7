#include "echobench/kernels.hpp"

#include <cmath>

// Scalar reference kernels. Per-output summation order here is the contract
// the SIMD variants must reproduce (see kernels.hpp).

namespace echobench {
namespace {

void conv1d_same_f32_scalar(const float* x, size_t n, const float* k, size_t klen, float* out) {
    const ptrdiff_t sn = static_cast<ptrdiff_t>(n);
    const ptrdiff_t kl = static_cast<ptrdiff_t>(klen);
    const ptrdiff_t h = kl / 2;
    for (ptrdiff_t i = 0; i < sn; ++i) {
        float acc = 0.0f;
        for (ptrdiff_t t = 0; t < kl; ++t) {
            ptrdiff_t j = i + t - h;
            if (j >= 0 && j < sn) acc += k[t] * x[j];
        }
        out[i] = acc;
    }
}

void complex_mag_f32_scalar(const float* re, const float* im, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i)
        out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

void accumulate_power_f32_scalar(const float* re, const float* im, float* acc, size_t n) {
    for (size_t i = 0; i < n; ++i)
        acc[i] += re[i] * re[i] + im[i] * im[i];
}

void spmv2_add_f32_scalar(const int32_t* col0, const float* w0, const float* w1,
                          size_t rows, const float* x, float* y) {
    for (size_t r = 0; r < rows; ++r) {
        int32_t c = col0[r];
        if (c < 0) continue;
        y[r] += w0[r] * x[c] + w1[r] * x[c + 1];
    }
}

void spmv2_sub_f32_scalar(const int32_t* col0, const float* w0, const float* w1,
                          size_t rows, const float* x, float* y) {
    for (size_t r = 0; r < rows; ++r) {
        int32_t c = col0[r];
        if (c < 0) continue;
        y[r] -= w0[r] * x[c] + w1[r] * x[c + 1];
    }
}

void dense_matvec_add_f32_scalar(const float* m, size_t rows, size_t cols,
                                 const float* x, float* y) {
    for (size_t r = 0; r < rows; ++r) {
        const float* row = m + r * cols;
        float acc = 0.0f;
        for (size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[r] += acc;
    }
}

void dense_matvec_sub_f32_scalar(const float* m, size_t rows, size_t cols,
                                 const float* x, float* y) {
    for (size_t r = 0; r < rows; ++r) {
        const float* row = m + r * cols;
        float acc = 0.0f;
        for (size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[r] -= acc;
    }
}

}  // namespace

const KernelOps& scalar_ops() {
    static const KernelOps ops = {
        "scalar",
        conv1d_same_f32_scalar,
        complex_mag_f32_scalar,
        accumulate_power_f32_scalar,
        spmv2_add_f32_scalar,
        spmv2_sub_f32_scalar,
        dense_matvec_add_f32_scalar,
        dense_matvec_sub_f32_scalar,
    };
    return ops;
}

}  // namespace echobench
