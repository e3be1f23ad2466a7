#pragma once

// Core data types and scalar math shared by every pipeline stage.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace echobench {

enum class Variant { Gather, FullCnn, Sparse };
enum class Modality { Bmode, ColorDoppler, PowerDoppler };
enum class Apodization { Rectangular, Hann };

const char* to_string(Variant v);
const char* to_string(Modality m);

/// Raw RF samples, dims (axial, channel, frame), axial index fastest-varying.
struct RfTensor {
    std::vector<float> data;
    int n_l = 0;  // axial samples
    int n_c = 0;  // receive channels
    int n_f = 0;  // temporal frames

    RfTensor() = default;
    RfTensor(int nl, int nc, int nf)
        : data(static_cast<size_t>(nl) * nc * nf, 0.0f), n_l(nl), n_c(nc), n_f(nf) {}

    size_t idx(int l, int c, int f) const {
        return static_cast<size_t>(l) + static_cast<size_t>(n_l) * (c + static_cast<size_t>(n_c) * f);
    }
    float& at(int l, int c, int f) { return data[idx(l, c, f)]; }
    float at(int l, int c, int f) const { return data[idx(l, c, f)]; }
    size_t size() const { return data.size(); }
    size_t bytes() const { return data.size() * sizeof(float); }
    void validate() const;
};

/// Complex baseband samples, split re/im planes, same layout as RfTensor.
struct IqTensor {
    std::vector<float> re, im;
    int n_s = 0;  // samples per channel
    int n_c = 0;
    int n_f = 0;

    IqTensor() = default;
    IqTensor(int ns, int nc, int nf)
        : re(static_cast<size_t>(ns) * nc * nf, 0.0f),
          im(static_cast<size_t>(ns) * nc * nf, 0.0f),
          n_s(ns), n_c(nc), n_f(nf) {}

    size_t idx(int s, int c, int f) const {
        return static_cast<size_t>(s) + static_cast<size_t>(n_s) * (c + static_cast<size_t>(n_c) * f);
    }
    size_t size() const { return re.size(); }
    size_t bytes() const { return (re.size() + im.size()) * sizeof(float); }
    void validate() const;
};

/// Linear array: n_elements centered on x = 0 at pitch spacing.
struct ProbeGeometry {
    int n_elements = 0;
    double pitch = 0.0;        // m
    double sound_speed = 0.0;  // m/s
    std::vector<double> element_x;

    static ProbeGeometry linear(int n_elements, double pitch, double sound_speed);
};

/// Fixed Cartesian pixel grid. Pixel (iz, ix) maps to flat index ix*nz + iz
/// (axial fastest, matching the tensor layout).
struct ImageGrid {
    double x_min = 0, x_max = 0;
    double z_min = 0, z_max = 0;
    int nx = 0, nz = 0;

    void validate() const;
    int n_pixels() const { return nx * nz; }
    double x_at(int ix) const { return nx > 1 ? x_min + (x_max - x_min) * ix / (nx - 1) : x_min; }
    double z_at(int iz) const { return nz > 1 ? z_min + (z_max - z_min) * iz / (nz - 1) : z_min; }
    size_t pixel(int iz, int ix) const { return static_cast<size_t>(ix) * nz + iz; }
};

struct PipelineConfig {
    double fs = 20e6;   // RF sampling rate, Hz
    double fc = 5e6;    // carrier frequency, Hz
    double c = 1540.0;  // sound speed, m/s
    double prf = 5000;  // pulse repetition frequency, Hz
    int n_f = 32;       // ensemble / frame count
    double dynamic_range_db = 60.0;
    int smoothing_kernel = 5;  // box side, odd
    int fir_taps = 63;         // odd
    Variant variant = Variant::Gather;
    Modality modality = Modality::Bmode;
    Apodization apodization = Apodization::Hann;

    void validate() const;
    double v_nyquist() const { return c * prf / (4.0 * fc); }
};

// ---- core math ----

/// Same-length 1-D convolution with zero padding at the borders.
/// out[i] = sum_t k[t] * x[i + t - (K-1)/2]. Kernel length must be odd.
template <typename T>
void conv1d_same(std::span<const T> x, std::span<const T> k, std::span<T> out) {
    if (k.size() % 2 == 0) throw std::invalid_argument("conv1d_same: kernel length must be odd");
    if (x.empty()) throw std::invalid_argument("conv1d_same: empty signal");
    if (out.size() != x.size()) throw std::invalid_argument("conv1d_same: output size mismatch");
    const ptrdiff_t n = static_cast<ptrdiff_t>(x.size());
    const ptrdiff_t klen = static_cast<ptrdiff_t>(k.size());
    const ptrdiff_t h = klen / 2;
    for (ptrdiff_t i = 0; i < n; ++i) {
        T acc = 0;
        for (ptrdiff_t t = 0; t < klen; ++t) {
            ptrdiff_t j = i + t - h;
            if (j >= 0 && j < n) acc += k[t] * x[j];
        }
        out[i] = acc;
    }
}

template <typename T>
std::vector<T> conv1d_same(std::span<const T> x, std::span<const T> k) {
    std::vector<T> out(x.size());
    conv1d_same<T>(x, k, std::span<T>(out));
    return out;
}

/// Same-size 2-D convolution, zero padded. Image is nz x nx, stored axial
/// (z) fastest: element (iz, ix) at img[ix*nz + iz]. Kernel dims odd.
template <typename T>
void conv2d_same(const T* img, int nz, int nx, const T* kern, int knz, int knx, T* out) {
    if (knz % 2 == 0 || knx % 2 == 0)
        throw std::invalid_argument("conv2d_same: kernel dims must be odd");
    const int hz = knz / 2, hx = knx / 2;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iz = 0; iz < nz; ++iz) {
            T acc = 0;
            for (int kx = 0; kx < knx; ++kx) {
                int jx = ix + kx - hx;
                if (jx < 0 || jx >= nx) continue;
                for (int kz = 0; kz < knz; ++kz) {
                    int jz = iz + kz - hz;
                    if (jz < 0 || jz >= nz) continue;
                    acc += kern[static_cast<size_t>(kx) * knz + kz] * img[static_cast<size_t>(jx) * nz + jz];
                }
            }
            out[static_cast<size_t>(ix) * nz + iz] = acc;
        }
    }
}

inline double complex_mag(double re, double im) { return std::hypot(re, im); }

/// atan2 with atan2(0, 0) pinned to 0; result in (-pi, pi].
inline double atan2_phase(double im, double re) {
    if (im == 0.0 && re == 0.0) return 0.0;
    return std::atan2(im, re);
}

}  // namespace echobench
