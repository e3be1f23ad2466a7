#pragma once

// Fully-initialized end-to-end pipeline: RF -> IQ -> beamformed IQ -> image.
// All tables and working buffers are built at construction; forward() performs
// no allocation and no table construction, so the timed loop measures only
// steady-state execution.

#include <span>
#include <vector>

#include "echobench/beamformer.hpp"
#include "echobench/bench.hpp"
#include "echobench/core.hpp"
#include "echobench/modalities.hpp"
#include "echobench/rf_frontend.hpp"

namespace echobench {

class Pipeline {
public:
    Pipeline(const PipelineConfig& cfg, const ProbeGeometry& geom, const ImageGrid& grid,
             int n_l, MemoryTracker* tracker = nullptr);
    ~Pipeline();
    Pipeline(const Pipeline&) = delete;
    Pipeline& operator=(const Pipeline&) = delete;

    void forward(const RfTensor& rf);

    /// Flat image output of the last forward(): n_f frames of nz*nx pixels
    /// for B-mode, one nz*nx frame for the Doppler modalities.
    std::span<const float> image() const;
    int nz() const { return grid_.nz; }
    int nx() const { return grid_.nx; }
    int output_frames() const;
    const PipelineConfig& config() const { return cfg_; }
    const ImageGrid& grid() const { return grid_; }
    double v_nyquist() const { return cfg_.v_nyquist(); }

private:
    void track(size_t bytes);

    PipelineConfig cfg_;
    ImageGrid grid_;
    int n_l_;
    MemoryTracker* tracker_ = nullptr;
    uint64_t tracked_bytes_ = 0;

    FirKernel fir_;
    MixerTable mixer_;
    DelayTable table_;
    SelectionMatrix sparse_;      // Sparse variant only
    DenseSelectionMatrix dense_;  // FullCnn variant only

    IqTensor iq_;
    IqTensor bf_;
    std::vector<float> scratch_;
    BmodeImage bmode_;
    VelocityImage velocity_;
    PowerImage power_;
};

}  // namespace echobench
