#pragma once

// Image-domain estimators on beamformed IQ (n_s = nz*nx pixels, n_c = 1).
// Images use the same axial-fastest layout as the grid: (iz, ix) at ix*nz+iz.

#include <vector>

#include "echobench/core.hpp"

namespace echobench {

struct BmodeImage {
    int nz = 0, nx = 0, n_f = 0;
    std::vector<float> pixels;  // [frame][ix*nz+iz], values in [0, 1]
};

struct VelocityImage {
    int nz = 0, nx = 0;
    std::vector<float> pixels;  // m/s
    double v_nyquist = 0.0;
};

struct PowerImage {
    int nz = 0, nx = 0;
    std::vector<float> pixels;  // dB relative to the 1e-12 floor
};

/// Per-frame envelope, dB compression against the frame maximum, clipped to
/// [-DR, 0] and mapped to [0, 1]. An all-zero frame maps to an all-zero image.
void bmode_into(const IqTensor& iq_bf, int nz, int nx, double dynamic_range_db,
                BmodeImage& out, std::vector<float>& scratch);
BmodeImage bmode(const IqTensor& iq_bf, int nz, int nx, double dynamic_range_db);

/// Lag-1 autocorrelation (Kasai) velocity: R1 smoothed with a box kernel of
/// side cfg.smoothing_kernel, v = (c*prf / (4*pi*fc)) * atan2(Im R1, Re R1).
void color_doppler_into(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig& cfg,
                        VelocityImage& out, std::vector<float>& scratch);
VelocityImage color_doppler(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig& cfg);

/// P = sum_f |x|^2 per pixel; out = 10*log10(max(P, 1e-12)).
void power_doppler_into(const IqTensor& iq_bf, int nz, int nx, PowerImage& out,
                        std::vector<float>& scratch);
PowerImage power_doppler(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig& cfg);

}  // namespace echobench
