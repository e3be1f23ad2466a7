#include "echobench/pipeline.hpp"

#include <algorithm>

namespace echobench {

Pipeline::Pipeline(const PipelineConfig& cfg, const ProbeGeometry& geom, const ImageGrid& grid,
                   int n_l, MemoryTracker* tracker)
    : cfg_(cfg), grid_(grid), n_l_(n_l), tracker_(tracker) {
    cfg_.validate();
    grid_.validate();

    fir_ = default_fir(cfg_);
    mixer_ = make_mixer(cfg_.fc, cfg_.fs, n_l_);
    table_ = compute_delay_table(geom, grid_, cfg_, n_l_);
    track(fir_.taps.size() * sizeof(double) + fir_.taps_f32.size() * sizeof(float));
    track((mixer_.cos_t.size() + mixer_.sin_t.size()) * sizeof(float));
    track(table_.bytes());

    if (cfg_.variant == Variant::Sparse) {
        sparse_ = build_selection_matrix(table_);
        track(sparse_.bytes());
    } else if (cfg_.variant == Variant::FullCnn) {
        SelectionMatrix sel = build_selection_matrix(table_);
        dense_ = densify(sel);
        track(dense_.bytes());
    }

    iq_ = IqTensor(n_l_, geom.n_elements, cfg_.n_f);
    bf_ = IqTensor(grid_.n_pixels(), 1, cfg_.n_f);
    track(iq_.bytes());
    track(bf_.bytes());

    const size_t np = static_cast<size_t>(grid_.n_pixels());
    const size_t side = static_cast<size_t>(cfg_.smoothing_kernel);
    scratch_.resize(std::max<size_t>(2 * static_cast<size_t>(n_l_), 3 * np + side * side));
    track(scratch_.size() * sizeof(float));

    switch (cfg_.modality) {
        case Modality::Bmode:
            bmode_.pixels.resize(np * cfg_.n_f);
            track(bmode_.pixels.size() * sizeof(float));
            break;
        case Modality::ColorDoppler:
            velocity_.pixels.resize(np);
            track(velocity_.pixels.size() * sizeof(float));
            break;
        case Modality::PowerDoppler:
            power_.pixels.resize(np);
            track(power_.pixels.size() * sizeof(float));
            break;
    }
}

Pipeline::~Pipeline() {
    if (tracker_) tracker_->free(tracked_bytes_);
}

void Pipeline::track(size_t bytes) {
    if (tracker_) tracker_->alloc(bytes);
    tracked_bytes_ += bytes;
}

void Pipeline::forward(const RfTensor& rf) {
    if (rf.n_l != n_l_ || rf.n_c != table_.n_channels || rf.n_f != cfg_.n_f)
        throw std::invalid_argument("Pipeline::forward: RF dims do not match pipeline shape");

    demodulate_into(rf, fir_, mixer_, iq_, scratch_);

    switch (cfg_.variant) {
        case Variant::Gather:
            das_gather(iq_, table_, bf_);
            break;
        case Variant::Sparse:
            das_sparse(iq_, sparse_, bf_);
            break;
        case Variant::FullCnn:
            das_dense_cnn(iq_, dense_, bf_);
            break;
    }

    switch (cfg_.modality) {
        case Modality::Bmode:
            bmode_into(bf_, grid_.nz, grid_.nx, cfg_.dynamic_range_db, bmode_, scratch_);
            break;
        case Modality::ColorDoppler:
            color_doppler_into(bf_, grid_.nz, grid_.nx, cfg_, velocity_, scratch_);
            break;
        case Modality::PowerDoppler:
            power_doppler_into(bf_, grid_.nz, grid_.nx, power_, scratch_);
            break;
    }
}

std::span<const float> Pipeline::image() const {
    switch (cfg_.modality) {
        case Modality::Bmode: return bmode_.pixels;
        case Modality::ColorDoppler: return velocity_.pixels;
        case Modality::PowerDoppler: return power_.pixels;
    }
    return {};
}

int Pipeline::output_frames() const {
    return cfg_.modality == Modality::Bmode ? cfg_.n_f : 1;
}

}  // namespace echobench
