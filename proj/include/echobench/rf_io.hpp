#pragma once

// Synthetic RF generation (point scatterers, zero-angle plane-wave transmit,
// optional inter-frame axial motion) and the RFB1 binary RF file format.

#include <cstdint>
#include <string>
#include <vector>

#include "echobench/core.hpp"

namespace echobench {

struct Scatterer {
    double x = 0.0;          // m
    double z = 0.0;          // m, >= 0
    double amplitude = 1.0;
    double v_axial = 0.0;    // m/s, positive = away from the probe
};

enum class RfDtype : uint8_t { Int16 = 0, Float32 = 1 };

struct RfFileHeader {
    // magic "RFB1", little-endian fields throughout
    uint32_t version = 1;
    RfDtype dtype = RfDtype::Float32;
    uint32_t n_l = 0, n_c = 0, n_f = 0;
    double fs = 0, fc = 0, c = 0, prf = 0;

    uint64_t payload_bytes() const {
        const uint64_t elems = static_cast<uint64_t>(n_l) * n_c * n_f;
        return elems * (dtype == RfDtype::Int16 ? 2 : 4);
    }
};

struct RfIoError : std::runtime_error {
    enum class Kind { BadMagic, BadVersion, UnknownDtype, Truncated, BadDims, Io };
    Kind kind;
    RfIoError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Echo model: per frame f the scatterer sits at z + v_axial*f/prf; its echo
/// on element e arrives at tau = (z_f + sqrt((x - x_e)^2 + z_f^2)) / c as a
/// Gaussian-modulated cosine at fc (fractional bandwidth 0.6, truncated at
/// +-3 sigma). Contributions sum linearly; echoes beyond n_l are truncated.
RfTensor synth_rf(const std::vector<Scatterer>& scatterers, const ProbeGeometry& geom,
                  const PipelineConfig& cfg, int n_l);

void save_rf(const std::string& path, const RfTensor& rf, const RfFileHeader& header);
std::pair<RfTensor, RfFileHeader> load_rf(const std::string& path);

}  // namespace echobench
