#include "echobench/core.hpp"

#include <cmath>

namespace echobench {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Gather: return "Dynamic indexing";
        case Variant::FullCnn: return "Full CNN";
        case Variant::Sparse: return "Sparse matrices";
    }
    return "?";
}

const char* to_string(Modality m) {
    switch (m) {
        case Modality::Bmode: return "RF2IQ_DAS_BMODE";
        case Modality::ColorDoppler: return "RF2IQ_DAS_DOPPLER";
        case Modality::PowerDoppler: return "RF2IQ_DAS_POWERDOPPLER";
    }
    return "?";
}

void RfTensor::validate() const {
    if (n_l <= 0 || n_c <= 0 || n_f <= 0)
        throw std::invalid_argument("RfTensor: non-positive dims");
    if (data.size() != static_cast<size_t>(n_l) * n_c * n_f)
        throw std::invalid_argument("RfTensor: data length != n_l*n_c*n_f");
    for (float v : data)
        if (!std::isfinite(v)) throw std::invalid_argument("RfTensor: non-finite sample");
}

void IqTensor::validate() const {
    if (n_s <= 0 || n_c <= 0 || n_f <= 0)
        throw std::invalid_argument("IqTensor: non-positive dims");
    const size_t want = static_cast<size_t>(n_s) * n_c * n_f;
    if (re.size() != want || im.size() != want)
        throw std::invalid_argument("IqTensor: plane length != n_s*n_c*n_f");
    for (size_t i = 0; i < re.size(); ++i)
        if (!std::isfinite(re[i]) || !std::isfinite(im[i]))
            throw std::invalid_argument("IqTensor: non-finite sample");
}

ProbeGeometry ProbeGeometry::linear(int n_elements, double pitch, double sound_speed) {
    if (n_elements <= 0 || pitch <= 0 || sound_speed <= 0)
        throw std::invalid_argument("ProbeGeometry: n_elements, pitch, c must be positive");
    ProbeGeometry g;
    g.n_elements = n_elements;
    g.pitch = pitch;
    g.sound_speed = sound_speed;
    g.element_x.resize(n_elements);
    const double half = 0.5 * (n_elements - 1);
    for (int i = 0; i < n_elements; ++i) g.element_x[i] = (i - half) * pitch;
    return g;
}

void ImageGrid::validate() const {
    if (nx < 1 || nz < 1) throw std::invalid_argument("ImageGrid: nx, nz must be >= 1");
    if (z_min < 0) throw std::invalid_argument("ImageGrid: z_min must be >= 0");
    if (x_max <= x_min || z_max <= z_min)
        throw std::invalid_argument("ImageGrid: empty extent");
}

void PipelineConfig::validate() const {
    if (fs <= 2.0 * fc) throw std::invalid_argument("PipelineConfig: fs must exceed 2*fc");
    if (fc <= 0 || c <= 0 || prf <= 0)
        throw std::invalid_argument("PipelineConfig: fc, c, prf must be positive");
    if (n_f < 1) throw std::invalid_argument("PipelineConfig: n_f must be >= 1");
    if (modality != Modality::Bmode && n_f < 2)
        throw std::invalid_argument("PipelineConfig: Doppler modalities need n_f >= 2");
    if (dynamic_range_db <= 0)
        throw std::invalid_argument("PipelineConfig: dynamic_range_db must be positive");
    if (smoothing_kernel < 1 || smoothing_kernel % 2 == 0)
        throw std::invalid_argument("PipelineConfig: smoothing_kernel must be odd >= 1");
    if (fir_taps < 1 || fir_taps % 2 == 0)
        throw std::invalid_argument("PipelineConfig: fir_taps must be odd >= 1");
}

}  // namespace echobench
