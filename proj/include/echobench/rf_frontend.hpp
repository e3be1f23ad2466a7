#pragma once

// RF -> IQ: carrier mixing followed by FIR low-pass filtering. No decimation;
// the IQ tensor keeps the RF axial length.

#include <vector>

#include "echobench/core.hpp"

namespace echobench {

/// Linear-phase low-pass FIR, unit DC gain.
struct FirKernel {
    std::vector<double> taps;
    std::vector<float> taps_f32;  // same taps, pipeline precision
    double normalized_cutoff = 0.0;  // cycles/sample, in (0, 0.5)
};

/// Hamming-windowed sinc, normalized to unit tap sum. taps odd >= 3.
FirKernel design_lowpass_fir(double normalized_cutoff, int taps);

/// FIR for a given config: cutoff 0.5*fc/fs, cfg.fir_taps taps.
FirKernel default_fir(const PipelineConfig& cfg);

/// Per-sample mixer phasors cos(2*pi*fc*n/fs), sin(...), n = 0 at the first
/// axial sample. Precomputed once, reused across channels and frames.
struct MixerTable {
    std::vector<float> cos_t, sin_t;
};
MixerTable make_mixer(double fc, double fs, int n_l);

/// iq[n] = LPF(rf[n] * exp(-j*2*pi*fc*n/fs)) per channel per frame.
/// Preallocated-output form; scratch must hold 2*n_l floats.
void demodulate_into(const RfTensor& rf, const FirKernel& fir, const MixerTable& mix,
                     IqTensor& out, std::vector<float>& scratch);

/// Allocating convenience wrapper.
IqTensor demodulate(const RfTensor& rf, const PipelineConfig& cfg, const FirKernel& fir);

}  // namespace echobench
