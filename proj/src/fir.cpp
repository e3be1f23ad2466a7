#include "echobench/rf_frontend.hpp"

#include <cmath>
#include <numbers>

#include "echobench/kernels.hpp"

namespace echobench {

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}
}  // namespace

FirKernel design_lowpass_fir(double normalized_cutoff, int taps) {
    if (!(normalized_cutoff > 0.0 && normalized_cutoff < 0.5))
        throw std::invalid_argument("design_lowpass_fir: cutoff must be in (0, 0.5)");
    if (taps < 3 || taps % 2 == 0)
        throw std::invalid_argument("design_lowpass_fir: taps must be odd >= 3");

    FirKernel k;
    k.normalized_cutoff = normalized_cutoff;
    k.taps.resize(taps);
    const int mid = (taps - 1) / 2;
    double sum = 0.0;
    for (int n = 0; n < taps; ++n) {
        double w = 0.54 - 0.46 * std::cos(2.0 * kPi * n / (taps - 1));  // Hamming
        double h = 2.0 * normalized_cutoff * sinc(2.0 * normalized_cutoff * (n - mid));
        k.taps[n] = h * w;
        sum += k.taps[n];
    }
    for (double& t : k.taps) t /= sum;
    // enforce exact symmetry against rounding in the window evaluation
    for (int n = 0; n < mid; ++n) {
        double avg = 0.5 * (k.taps[n] + k.taps[taps - 1 - n]);
        k.taps[n] = k.taps[taps - 1 - n] = avg;
    }
    k.taps_f32.assign(k.taps.begin(), k.taps.end());
    return k;
}

FirKernel default_fir(const PipelineConfig& cfg) {
    return design_lowpass_fir(0.5 * cfg.fc / cfg.fs, cfg.fir_taps);
}

MixerTable make_mixer(double fc, double fs, int n_l) {
    MixerTable m;
    m.cos_t.resize(n_l);
    m.sin_t.resize(n_l);
    for (int n = 0; n < n_l; ++n) {
        double phase = 2.0 * kPi * fc * static_cast<double>(n) / fs;
        m.cos_t[n] = static_cast<float>(std::cos(phase));
        m.sin_t[n] = static_cast<float>(std::sin(phase));
    }
    return m;
}

void demodulate_into(const RfTensor& rf, const FirKernel& fir, const MixerTable& mix,
                     IqTensor& out, std::vector<float>& scratch) {
    const int n_l = rf.n_l;
    if (static_cast<int>(mix.cos_t.size()) != n_l)
        throw std::invalid_argument("demodulate: mixer table length != n_l");
    if (out.n_s != n_l || out.n_c != rf.n_c || out.n_f != rf.n_f)
        throw std::invalid_argument("demodulate: output dims mismatch");
    if (scratch.size() < 2 * static_cast<size_t>(n_l))
        scratch.resize(2 * static_cast<size_t>(n_l));

    const KernelOps& ops = active_ops();
    float* pre_re = scratch.data();
    float* pre_im = scratch.data() + n_l;
    const float* taps = fir.taps_f32.data();
    const size_t klen = fir.taps_f32.size();

    for (int f = 0; f < rf.n_f; ++f) {
        for (int c = 0; c < rf.n_c; ++c) {
            const float* x = rf.data.data() + rf.idx(0, c, f);
            for (int n = 0; n < n_l; ++n) {
                pre_re[n] = x[n] * mix.cos_t[n];
                pre_im[n] = -x[n] * mix.sin_t[n];
            }
            float* ore = out.re.data() + out.idx(0, c, f);
            float* oim = out.im.data() + out.idx(0, c, f);
            ops.conv1d_same_f32(pre_re, n_l, taps, klen, ore);
            ops.conv1d_same_f32(pre_im, n_l, taps, klen, oim);
        }
    }
}

IqTensor demodulate(const RfTensor& rf, const PipelineConfig& cfg, const FirKernel& fir) {
    if (!(cfg.fs > 2.0 * cfg.fc))
        throw std::invalid_argument("demodulate: fs must exceed 2*fc");
    MixerTable mix = make_mixer(cfg.fc, cfg.fs, rf.n_l);
    IqTensor out(rf.n_l, rf.n_c, rf.n_f);
    std::vector<float> scratch;
    demodulate_into(rf, fir, mix, out, scratch);
    return out;
}

}  // namespace echobench
