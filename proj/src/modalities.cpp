#include "echobench/modalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "echobench/kernels.hpp"

namespace echobench {

namespace {
constexpr float kLogFloor = 1e-12f;

void check_pixels(const IqTensor& iq_bf, int nz, int nx) {
    if (iq_bf.n_c != 1 || iq_bf.n_s != nz * nx)
        throw std::invalid_argument("modality: expected beamformed tensor with n_s = nz*nx, n_c = 1");
}
}  // namespace

void bmode_into(const IqTensor& iq_bf, int nz, int nx, double dynamic_range_db,
                BmodeImage& out, std::vector<float>& scratch) {
    check_pixels(iq_bf, nz, nx);
    if (dynamic_range_db <= 0)
        throw std::invalid_argument("bmode: dynamic_range_db must be positive");
    const size_t np = static_cast<size_t>(nz) * nx;
    out.nz = nz;
    out.nx = nx;
    out.n_f = iq_bf.n_f;
    out.pixels.resize(np * iq_bf.n_f);
    if (scratch.size() < np) scratch.resize(np);

    const KernelOps& ops = active_ops();
    const auto dr = static_cast<float>(dynamic_range_db);
    for (int f = 0; f < iq_bf.n_f; ++f) {
        const size_t base = iq_bf.idx(0, 0, f);
        float* env = scratch.data();
        ops.complex_mag_f32(iq_bf.re.data() + base, iq_bf.im.data() + base, env, np);
        const float m = *std::max_element(env, env + np);
        float* img = out.pixels.data() + np * static_cast<size_t>(f);
        if (m == 0.0f) {
            std::fill(img, img + np, 0.0f);
            continue;
        }
        for (size_t p = 0; p < np; ++p) {
            float db = 20.0f * std::log10(env[p] / m + kLogFloor);
            db = std::clamp(db, -dr, 0.0f);
            img[p] = (db + dr) / dr;
        }
    }
}

BmodeImage bmode(const IqTensor& iq_bf, int nz, int nx, double dynamic_range_db) {
    BmodeImage out;
    std::vector<float> scratch;
    bmode_into(iq_bf, nz, nx, dynamic_range_db, out, scratch);
    return out;
}

void color_doppler_into(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig& cfg,
                        VelocityImage& out, std::vector<float>& scratch) {
    check_pixels(iq_bf, nz, nx);
    if (iq_bf.n_f < 2)
        throw std::invalid_argument("color_doppler: needs n_f >= 2");
    const size_t np = static_cast<size_t>(nz) * nx;
    const int side = cfg.smoothing_kernel;
    const size_t ksz = static_cast<size_t>(side) * side;
    out.nz = nz;
    out.nx = nx;
    out.v_nyquist = cfg.v_nyquist();
    out.pixels.resize(np);
    if (scratch.size() < 3 * np + ksz) scratch.resize(3 * np + ksz);

    float* r1_re = scratch.data();
    float* r1_im = scratch.data() + np;
    float* sm_re = scratch.data() + 2 * np;
    float* box = scratch.data() + 3 * np;
    std::fill(r1_re, r1_re + 2 * np, 0.0f);
    std::fill(box, box + ksz, 1.0f / static_cast<float>(ksz));

    // lag-1 autocorrelation: R1[p] = sum_f conj(x_f) * x_{f+1}
    for (int f = 0; f + 1 < iq_bf.n_f; ++f) {
        const float* re0 = iq_bf.re.data() + iq_bf.idx(0, 0, f);
        const float* im0 = iq_bf.im.data() + iq_bf.idx(0, 0, f);
        const float* re1 = iq_bf.re.data() + iq_bf.idx(0, 0, f + 1);
        const float* im1 = iq_bf.im.data() + iq_bf.idx(0, 0, f + 1);
        for (size_t p = 0; p < np; ++p) {
            r1_re[p] += re0[p] * re1[p] + im0[p] * im1[p];
            r1_im[p] += re0[p] * im1[p] - im0[p] * re1[p];
        }
    }

    conv2d_same<float>(r1_re, nz, nx, box, side, side, sm_re);
    conv2d_same<float>(r1_im, nz, nx, box, side, side, out.pixels.data());

    const double kasai = cfg.c * cfg.prf / (4.0 * std::numbers::pi * cfg.fc);
    for (size_t p = 0; p < np; ++p)
        out.pixels[p] = static_cast<float>(kasai * atan2_phase(out.pixels[p], sm_re[p]));
}

VelocityImage color_doppler(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig& cfg) {
    VelocityImage out;
    std::vector<float> scratch;
    color_doppler_into(iq_bf, nz, nx, cfg, out, scratch);
    return out;
}

void power_doppler_into(const IqTensor& iq_bf, int nz, int nx, PowerImage& out,
                        std::vector<float>& scratch) {
    check_pixels(iq_bf, nz, nx);
    const size_t np = static_cast<size_t>(nz) * nx;
    out.nz = nz;
    out.nx = nx;
    out.pixels.resize(np);
    if (scratch.size() < np) scratch.resize(np);

    float* acc = scratch.data();
    std::fill(acc, acc + np, 0.0f);
    const KernelOps& ops = active_ops();
    for (int f = 0; f < iq_bf.n_f; ++f) {
        const size_t base = iq_bf.idx(0, 0, f);
        ops.accumulate_power_f32(iq_bf.re.data() + base, iq_bf.im.data() + base, acc, np);
    }
    for (size_t p = 0; p < np; ++p)
        out.pixels[p] = 10.0f * std::log10(std::max(acc[p], kLogFloor));
}

PowerImage power_doppler(const IqTensor& iq_bf, int nz, int nx, const PipelineConfig&) {
    PowerImage out;
    std::vector<float> scratch;
    power_doppler_into(iq_bf, nz, nx, out, scratch);
    return out;
}

}  // namespace echobench
