#pragma once

// Runtime-dispatched float32 inner loops. Scalar reference implementations
// always exist; an AVX2 variant is selected at startup when the CPU supports
// it. Override with ECHOBENCH_KERNELS=scalar|avx2.
//
// All kernels except dense_matvec_add are bit-identical between backends
// (lane-parallel over independent outputs, fixed per-output summation order).
// dense_matvec_add uses vector partial sums, so it agrees with the scalar
// reference only to rounding.

#include <cstddef>
#include <cstdint>

namespace echobench {

struct KernelOps {
    const char* name;

    // out[i] = sum_t k[t] * x[i + t - klen/2], zero padded. klen odd.
    void (*conv1d_same_f32)(const float* x, size_t n, const float* k, size_t klen, float* out);

    // out[i] = sqrt(re[i]^2 + im[i]^2)
    void (*complex_mag_f32)(const float* re, const float* im, float* out, size_t n);

    // acc[i] += re[i]^2 + im[i]^2
    void (*accumulate_power_f32)(const float* re, const float* im, float* acc, size_t n);

    // Two-tap structured SpMV, ELL-style view: row r reads x[col0[r]] and
    // x[col0[r] + 1]; col0[r] < 0 marks an empty row.
    // y[r] += w0[r]*x[col0[r]] + w1[r]*x[col0[r]+1]
    void (*spmv2_add_f32)(const int32_t* col0, const float* w0, const float* w1,
                          size_t rows, const float* x, float* y);

    // y[r] -= w0[r]*x[col0[r]] + w1[r]*x[col0[r]+1]
    void (*spmv2_sub_f32)(const int32_t* col0, const float* w0, const float* w1,
                          size_t rows, const float* x, float* y);

    // y[r] += sum_j m[r*cols + j] * x[j]   (row-major dense matrix)
    void (*dense_matvec_add_f32)(const float* m, size_t rows, size_t cols,
                                 const float* x, float* y);

    // y[r] -= sum_j m[r*cols + j] * x[j]
    void (*dense_matvec_sub_f32)(const float* m, size_t rows, size_t cols,
                                 const float* x, float* y);
};

const KernelOps& scalar_ops();
bool avx2_available();
const KernelOps& avx2_ops();  // valid only when avx2_available()

/// Backend chosen at first use: AVX2 when supported, unless overridden.
const KernelOps& active_ops();

}  // namespace echobench
