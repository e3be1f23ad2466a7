#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <numeric>

#include "echobench/rf_frontend.hpp"

using namespace echobench;

namespace {

constexpr double kPi = std::numbers::pi;

// DFT magnitude of the kernel at a normalized frequency (cycles/sample)
double kernel_gain(const FirKernel& fir, double freq) {
    std::complex<double> acc = 0.0;
    for (size_t n = 0; n < fir.taps.size(); ++n)
        acc += fir.taps[n] * std::exp(std::complex<double>(0.0, -2.0 * kPi * freq * n));
    return std::abs(acc);
}

RfTensor make_tone(const PipelineConfig& cfg, int n_l, double freq, double phase) {
    RfTensor rf(n_l, 1, 1);
    for (int n = 0; n < n_l; ++n)
        rf.at(n, 0, 0) = static_cast<float>(std::cos(2.0 * kPi * freq * n / cfg.fs + phase));
    return rf;
}

}  // namespace

TEST_CASE("FIR design: unit DC gain, symmetry, -6 dB at cutoff") {
    auto fir = design_lowpass_fir(0.1, 63);
    CHECK(fir.taps.size() == 63);
    double sum = std::accumulate(fir.taps.begin(), fir.taps.end(), 0.0);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    for (size_t i = 0; i < fir.taps.size(); ++i)
        CHECK(fir.taps[i] == fir.taps[fir.taps.size() - 1 - i]);

    const double gain_db = 20.0 * std::log10(kernel_gain(fir, 0.1));
    CHECK(gain_db == doctest::Approx(-6.0).epsilon(0.2));  // -6 dB +- ~1 dB
    CHECK(std::abs(gain_db + 6.0) <= 1.0);
}

TEST_CASE("FIR design rejects invalid parameters") {
    CHECK_THROWS_AS(design_lowpass_fir(0.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(design_lowpass_fir(0.5, 63), std::invalid_argument);
    CHECK_THROWS_AS(design_lowpass_fir(0.1, 62), std::invalid_argument);
    CHECK_THROWS_AS(design_lowpass_fir(0.1, 1), std::invalid_argument);
}

TEST_CASE("all-zero RF demodulates to all-zero IQ") {
    PipelineConfig cfg;
    RfTensor rf(256, 2, 2);
    auto iq = demodulate(rf, cfg, default_fir(cfg));
    for (float v : iq.re) CHECK(v == 0.0f);
    for (float v : iq.im) CHECK(v == 0.0f);
    CHECK(iq.n_s == rf.n_l);  // no decimation
}

TEST_CASE("carrier tone demodulates to magnitude 0.5") {
    PipelineConfig cfg;
    const int n_l = 512;
    auto rf = make_tone(cfg, n_l, cfg.fc, 0.0);
    auto iq = demodulate(rf, cfg, default_fir(cfg));
    for (int n = cfg.fir_taps; n < n_l - cfg.fir_taps; ++n) {
        const double mag = std::hypot(iq.re[n], iq.im[n]);
        CHECK(mag == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("tone phase is preserved in baseband") {
    PipelineConfig cfg;
    const int n_l = 512;
    const double phi = kPi / 3.0;
    auto rf = make_tone(cfg, n_l, cfg.fc, phi);
    auto iq = demodulate(rf, cfg, default_fir(cfg));
    for (int n = cfg.fir_taps; n < n_l - cfg.fir_taps; ++n) {
        const double arg = std::atan2(iq.im[n], iq.re[n]);
        CHECK(std::abs(arg - phi) <= 0.02);
    }
}

TEST_CASE("2*fc image tone attenuated at least 20 dB") {
    PipelineConfig cfg;
    const int n_l = 512;
    auto pass = demodulate(make_tone(cfg, n_l, cfg.fc, 0.0), cfg, default_fir(cfg));
    auto imagef = demodulate(make_tone(cfg, n_l, 2.0 * cfg.fc, 0.0), cfg, default_fir(cfg));
    double mp = 0.0, mi = 0.0;
    for (int n = cfg.fir_taps; n < n_l - cfg.fir_taps; ++n) {
        mp = std::max(mp, static_cast<double>(std::hypot(pass.re[n], pass.im[n])));
        mi = std::max(mi, static_cast<double>(std::hypot(imagef.re[n], imagef.im[n])));
    }
    CHECK(20.0 * std::log10(mp / mi) >= 20.0);
}

TEST_CASE("demodulate is linear and deterministic") {
    PipelineConfig cfg;
    const int n_l = 200;
    auto rf = make_tone(cfg, n_l, 0.8 * cfg.fc, 0.3);
    RfTensor scaled = rf;
    const float a = 3.5f;
    for (auto& v : scaled.data) v *= a;

    auto fir = default_fir(cfg);
    auto iq1 = demodulate(rf, cfg, fir);
    auto iq2 = demodulate(scaled, cfg, fir);
    for (size_t i = 0; i < iq1.re.size(); ++i) {
        CHECK(iq2.re[i] == doctest::Approx(a * iq1.re[i]).epsilon(1e-6));
        CHECK(iq2.im[i] == doctest::Approx(a * iq1.im[i]).epsilon(1e-6));
    }

    auto iq3 = demodulate(rf, cfg, fir);
    CHECK(std::memcmp(iq1.re.data(), iq3.re.data(), iq1.re.size() * sizeof(float)) == 0);
    CHECK(std::memcmp(iq1.im.data(), iq3.im.data(), iq1.im.size() * sizeof(float)) == 0);
}

TEST_CASE("demodulate_into matches the allocating form") {
    PipelineConfig cfg;
    const int n_l = 128;
    RfTensor rf(n_l, 3, 2);
    for (size_t i = 0; i < rf.data.size(); ++i)
        rf.data[i] = static_cast<float>(std::sin(0.1 * static_cast<double>(i)));
    auto fir = default_fir(cfg);
    auto mix = make_mixer(cfg.fc, cfg.fs, n_l);
    IqTensor out(n_l, 3, 2);
    std::vector<float> scratch(2 * n_l);
    demodulate_into(rf, fir, mix, out, scratch);
    auto ref = demodulate(rf, cfg, fir);
    CHECK(std::memcmp(out.re.data(), ref.re.data(), ref.re.size() * sizeof(float)) == 0);
    CHECK(std::memcmp(out.im.data(), ref.im.data(), ref.im.size() * sizeof(float)) == 0);
}
