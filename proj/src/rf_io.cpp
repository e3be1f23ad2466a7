#include "echobench/rf_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace echobench {

namespace {

constexpr char kMagic[4] = {'R', 'F', 'B', '1'};
constexpr double kFracBandwidth = 0.6;
constexpr double kTruncSigmas = 3.0;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(is);
}

}  // namespace

RfTensor synth_rf(const std::vector<Scatterer>& scatterers, const ProbeGeometry& geom,
                  const PipelineConfig& cfg, int n_l) {
    if (n_l <= 0) throw std::invalid_argument("synth_rf: n_l must be positive");
    const int n_c = geom.n_elements;
    const int n_f = cfg.n_f;

    // -6 dB fractional bandwidth -> Gaussian envelope sigma in time
    const double sigma_f = kFracBandwidth * cfg.fc / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double sigma_t = 1.0 / (2.0 * std::numbers::pi * sigma_f);

    std::vector<double> acc(static_cast<size_t>(n_l) * n_c * n_f, 0.0);
    for (const Scatterer& s : scatterers) {
        if (s.z < 0) throw std::invalid_argument("synth_rf: scatterer z must be >= 0");
        for (int f = 0; f < n_f; ++f) {
            const double zf = s.z + s.v_axial * f / cfg.prf;
            for (int c = 0; c < n_c; ++c) {
                const double dx = s.x - geom.element_x[c];
                const double tau = (zf + std::sqrt(dx * dx + zf * zf)) / cfg.c;
                const auto l0 = static_cast<int>(std::ceil((tau - kTruncSigmas * sigma_t) * cfg.fs));
                const auto l1 = static_cast<int>(std::floor((tau + kTruncSigmas * sigma_t) * cfg.fs));
                const int lo = std::max(l0, 0);
                const int hi = std::min(l1, n_l - 1);  // beyond n_l: truncated
                double* out = acc.data() + (static_cast<size_t>(c) + static_cast<size_t>(n_c) * f) * n_l;
                for (int l = lo; l <= hi; ++l) {
                    const double dt = l / cfg.fs - tau;
                    out[l] += s.amplitude * std::exp(-dt * dt / (2.0 * sigma_t * sigma_t)) *
                              std::cos(2.0 * std::numbers::pi * cfg.fc * dt);
                }
            }
        }
    }

    RfTensor rf(n_l, n_c, n_f);
    for (size_t i = 0; i < acc.size(); ++i) rf.data[i] = static_cast<float>(acc[i]);
    return rf;
}

void save_rf(const std::string& path, const RfTensor& rf, const RfFileHeader& header) {
    if (header.n_l != static_cast<uint32_t>(rf.n_l) ||
        header.n_c != static_cast<uint32_t>(rf.n_c) ||
        header.n_f != static_cast<uint32_t>(rf.n_f))
        throw RfIoError(RfIoError::Kind::BadDims, "save_rf: header dims do not match tensor");

    std::ofstream os(path, std::ios::binary);
    if (!os) throw RfIoError(RfIoError::Kind::Io, "save_rf: cannot open " + path);
    os.write(kMagic, 4);
    put(os, header.version);
    put(os, static_cast<uint8_t>(header.dtype));
    put(os, header.n_l);
    put(os, header.n_c);
    put(os, header.n_f);
    put(os, header.fs);
    put(os, header.fc);
    put(os, header.c);
    put(os, header.prf);

    if (header.dtype == RfDtype::Float32) {
        os.write(reinterpret_cast<const char*>(rf.data.data()),
                 static_cast<std::streamsize>(rf.data.size() * sizeof(float)));
    } else {
        std::vector<int16_t> buf(rf.data.size());
        for (size_t i = 0; i < rf.data.size(); ++i)
            buf[i] = static_cast<int16_t>(std::lrintf(rf.data[i]));
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(int16_t)));
    }
    if (!os) throw RfIoError(RfIoError::Kind::Io, "save_rf: write failed for " + path);
}

std::pair<RfTensor, RfFileHeader> load_rf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw RfIoError(RfIoError::Kind::Io, "load_rf: cannot open " + path);

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw RfIoError(RfIoError::Kind::BadMagic, "load_rf: bad magic");

    RfFileHeader h;
    uint8_t dtype_code = 0xff;
    if (!get(is, h.version) || !get(is, dtype_code) || !get(is, h.n_l) || !get(is, h.n_c) ||
        !get(is, h.n_f) || !get(is, h.fs) || !get(is, h.fc) || !get(is, h.c) || !get(is, h.prf))
        throw RfIoError(RfIoError::Kind::Truncated, "load_rf: truncated header");
    if (h.version != 1)
        throw RfIoError(RfIoError::Kind::BadVersion, "load_rf: unsupported version");
    if (dtype_code > 1)
        throw RfIoError(RfIoError::Kind::UnknownDtype, "load_rf: unknown dtype code");
    h.dtype = static_cast<RfDtype>(dtype_code);
    if (h.n_l == 0 || h.n_c == 0 || h.n_f == 0)
        throw RfIoError(RfIoError::Kind::BadDims, "load_rf: zero dimension");

    RfTensor rf(static_cast<int>(h.n_l), static_cast<int>(h.n_c), static_cast<int>(h.n_f));
    if (h.dtype == RfDtype::Float32) {
        is.read(reinterpret_cast<char*>(rf.data.data()),
                static_cast<std::streamsize>(rf.data.size() * sizeof(float)));
        if (!is) throw RfIoError(RfIoError::Kind::Truncated, "load_rf: truncated payload");
    } else {
        std::vector<int16_t> buf(rf.data.size());
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(int16_t)));
        if (!is) throw RfIoError(RfIoError::Kind::Truncated, "load_rf: truncated payload");
        for (size_t i = 0; i < buf.size(); ++i) rf.data[i] = static_cast<float>(buf[i]);
    }
    return {std::move(rf), h};
}

}  // namespace echobench
