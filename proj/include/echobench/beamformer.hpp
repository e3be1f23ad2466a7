#pragma once

// Delay-and-sum image formation over a fixed grid, three interchangeable
// back-ends built from one shared delay table:
//   gather  - dynamic indexing with 2-tap linear interpolation
//   sparse  - per-channel structured sparse (2 entries/row) matrix products
//   dense   - the same matrices densified (a 1x1 convolution over axial
//             samples followed by a channel-sum reduction)
// All variants use ascending-channel summation order.
//
// Baseband coherence: demodulated samples carry a per-channel carrier phase
// -2*pi*fc*tau, so the beamsum rotates each interpolated sample by
// +2*pi*fc*tau before summing. In the matrix forms the complex rotation is
// expressed as a cos-scaled and a sin-scaled pair of real matrices. A table
// with phase_per_sample == 0 degenerates to plain interpolation weights.

#include <cstdint>
#include <vector>

#include "echobench/core.hpp"

namespace echobench {

/// Fractional receive delays (in samples) and apodization weights per
/// (pixel, channel). Entry layout: [p * n_channels + c].
struct DelayTable {
    int n_pixels = 0;
    int n_channels = 0;
    int n_s = 0;  // axial samples the table was built for
    std::vector<double> delay_samples;
    std::vector<double> apod;  // 0 where the delay falls outside [0, n_s-2]
    double phase_per_sample = 0.0;  // carrier phase advance per sample, 2*pi*fc/fs

    size_t bytes() const {
        return (delay_samples.size() + apod.size()) * sizeof(double);
    }
};

/// Zero-angle plane-wave transmit: tau = (z + sqrt((x - x_e)^2 + z^2)) / c.
DelayTable compute_delay_table(const ProbeGeometry& geom, const ImageGrid& grid,
                               const PipelineConfig& cfg, int n_s);

/// Per-channel sparse selection matrices, n_pixels x n_s, exactly 0 or 2
/// stored entries per row at adjacent columns (k, k+1). Without rotation the
/// values are apod*(1-frac), apod*frac and the row sum equals the apodization
/// weight. With rotation each channel holds a cosine-scaled matrix C and a
/// sine-scaled matrix S at the same sparsity pattern:
///   out = sum_c (C_c + j*S_c) * x_c      (applied to re/im planes)
/// CSR is the authoritative storage; the col0/w* arrays are an equivalent
/// fixed-width view consumed by the SpMV kernel (col0 = -1 marks an empty
/// row).
struct SelectionMatrix {
    int n_pixels = 0;
    int n_s = 0;
    int n_channels = 0;
    bool has_rotation = false;
    struct Channel {
        std::vector<int32_t> row_offsets;  // n_pixels + 1, shared by C and S
        std::vector<int32_t> cols;
        std::vector<float> vals;    // C values
        std::vector<float> vals_s;  // S values (empty without rotation)
        std::vector<int32_t> col0;  // fixed-width view, n_pixels
        std::vector<float> w0, w1;      // C
        std::vector<float> w0s, w1s;    // S
    };
    std::vector<Channel> channels;

    size_t bytes() const;
};

SelectionMatrix build_selection_matrix(const DelayTable& table);

/// Densified SelectionMatrix: per-channel row-major n_pixels x n_s matrices
/// whose stored entries equal the CSR values bitwise.
struct DenseSelectionMatrix {
    int n_pixels = 0;
    int n_s = 0;
    int n_channels = 0;
    bool has_rotation = false;
    std::vector<std::vector<float>> m;    // C, [channel][p * n_s + s]
    std::vector<std::vector<float>> m_s;  // S (empty without rotation)

    size_t bytes() const;
};

DenseSelectionMatrix densify(const SelectionMatrix& sel);

// Beamformed output is an IqTensor with n_s = n_pixels, n_c = 1.
void das_gather(const IqTensor& iq, const DelayTable& table, IqTensor& out);
void das_sparse(const IqTensor& iq, const SelectionMatrix& sel, IqTensor& out);
void das_dense_cnn(const IqTensor& iq, const DenseSelectionMatrix& sel, IqTensor& out);

IqTensor das_gather(const IqTensor& iq, const DelayTable& table);
IqTensor das_sparse(const IqTensor& iq, const SelectionMatrix& sel);
IqTensor das_dense_cnn(const IqTensor& iq, const DenseSelectionMatrix& sel);

}  // namespace echobench
