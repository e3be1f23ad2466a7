#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include "echobench/rf_io.hpp"

using namespace echobench;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

// analytic-signal envelope via DFT (zero the negative frequencies)
std::vector<double> envelope(const float* x, int n) {
    std::vector<std::complex<double>> spec(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (int t = 0; t < n; ++t)
            acc += static_cast<double>(x[t]) *
                   std::exp(std::complex<double>(0.0, -2.0 * kPi * k * t / n));
        spec[k] = acc;
    }
    for (int k = 1; k < n; ++k) {
        if (k < (n + 1) / 2)
            spec[k] *= 2.0;
        else if (k > n / 2)
            spec[k] = 0.0;
    }
    std::vector<double> env(n);
    for (int t = 0; t < n; ++t) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += spec[k] * std::exp(std::complex<double>(0.0, 2.0 * kPi * k * t / n));
        env[t] = std::abs(acc) / n;
    }
    return env;
}

int env_peak(const float* x, int n) {
    auto env = envelope(x, n);
    int best = 0;
    for (int t = 1; t < n; ++t)
        if (env[t] > env[best]) best = t;
    return best;
}

RfFileHeader header_for(const RfTensor& rf, const PipelineConfig& cfg, RfDtype dt) {
    RfFileHeader h;
    h.dtype = dt;
    h.n_l = rf.n_l;
    h.n_c = rf.n_c;
    h.n_f = rf.n_f;
    h.fs = cfg.fs;
    h.fc = cfg.fc;
    h.c = cfg.c;
    h.prf = cfg.prf;
    return h;
}

}  // namespace

TEST_CASE("empty scatterer list synthesizes silence") {
    PipelineConfig cfg;
    cfg.n_f = 2;
    auto geom = ProbeGeometry::linear(4, 1e-4, cfg.c);
    auto rf = synth_rf({}, geom, cfg, 128);
    CHECK(rf.n_l == 128);
    CHECK(rf.n_c == 4);
    CHECK(rf.n_f == 2);
    for (float v : rf.data) CHECK(v == 0.0f);
}

TEST_CASE("echo arrives at the two-way travel time") {
    PipelineConfig cfg;
    cfg.n_f = 1;
    auto geom = ProbeGeometry::linear(3, 1e-4, cfg.c);  // center element at x = 0
    const double z0 = 8e-3;
    const int n_l = 512;
    auto rf = synth_rf({{0.0, z0, 1.0, 0.0}}, geom, cfg, n_l);

    const int expect = static_cast<int>(std::lround(2.0 * z0 * cfg.fs / cfg.c));
    const int peak = env_peak(rf.data.data() + rf.idx(0, 1, 0), n_l);
    CHECK(std::abs(peak - expect) <= 1);
}

TEST_CASE("axial motion shifts the arrival by 2*v*fs/(c*prf) per frame") {
    PipelineConfig cfg;
    cfg.n_f = 4;
    auto geom = ProbeGeometry::linear(3, 1e-4, cfg.c);
    const double z0 = 8e-3;
    const int n_l = 640;
    // pick v so the per-frame shift is exactly 3 samples
    const double shift = 3.0;
    const double v = shift * cfg.c * cfg.prf / (2.0 * cfg.fs);
    auto rf = synth_rf({{0.0, z0, 1.0, v}}, geom, cfg, n_l);

    const int p0 = env_peak(rf.data.data() + rf.idx(0, 1, 0), n_l);
    for (int f = 1; f < cfg.n_f; ++f) {
        const int pf = env_peak(rf.data.data() + rf.idx(0, 1, f), n_l);
        CHECK(std::abs(pf - p0 - static_cast<int>(shift) * f) <= 1);
    }
}

TEST_CASE("synthesis is linear in scatterer amplitude") {
    PipelineConfig cfg;
    cfg.n_f = 1;
    auto geom = ProbeGeometry::linear(4, 1e-4, cfg.c);
    std::vector<Scatterer> one = {{0.5e-3, 6e-3, 1.0, 0.0}};
    std::vector<Scatterer> three = {{0.5e-3, 6e-3, 3.0, 0.0}};
    auto rf1 = synth_rf(one, geom, cfg, 400);
    auto rf3 = synth_rf(three, geom, cfg, 400);
    for (size_t i = 0; i < rf1.data.size(); ++i)
        CHECK(rf3.data[i] == doctest::Approx(3.0f * rf1.data[i]).epsilon(1e-6));
}

TEST_CASE("float32 round trip is bit exact") {
    PipelineConfig cfg;
    std::mt19937 rng(51);
    std::uniform_real_distribution<float> d(-1.0f, 1.0f);
    RfTensor rf(32, 3, 2);
    for (auto& v : rf.data) v = d(rng);

    const auto path = temp_file("echobench_rt_f32.rfb");
    save_rf(path.string(), rf, header_for(rf, cfg, RfDtype::Float32));
    auto [loaded, h] = load_rf(path.string());
    CHECK(h.dtype == RfDtype::Float32);
    CHECK(h.n_l == 32);
    CHECK(h.fs == cfg.fs);
    CHECK(h.payload_bytes() == rf.data.size() * sizeof(float));
    CHECK(std::memcmp(loaded.data.data(), rf.data.data(), rf.data.size() * sizeof(float)) == 0);
    fs::remove(path);
}

TEST_CASE("int16 round trip preserves integral samples") {
    PipelineConfig cfg;
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> d(-32768, 32767);
    RfTensor rf(16, 2, 2);
    for (auto& v : rf.data) v = static_cast<float>(d(rng));

    const auto path = temp_file("echobench_rt_i16.rfb");
    save_rf(path.string(), rf, header_for(rf, cfg, RfDtype::Int16));
    auto [loaded, h] = load_rf(path.string());
    CHECK(h.dtype == RfDtype::Int16);
    CHECK(h.payload_bytes() == rf.data.size() * sizeof(int16_t));
    for (size_t i = 0; i < rf.data.size(); ++i) CHECK(loaded.data[i] == rf.data[i]);
    fs::remove(path);
}

TEST_CASE("load errors are distinguished by kind") {
    PipelineConfig cfg;
    RfTensor rf(8, 2, 1);
    for (size_t i = 0; i < rf.data.size(); ++i) rf.data[i] = static_cast<float>(i);
    const auto path = temp_file("echobench_badfile.rfb");
    save_rf(path.string(), rf, header_for(rf, cfg, RfDtype::Float32));

    auto patch_byte = [&](std::streamoff off, char value) {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(off);
        f.put(value);
    };

    SUBCASE("bad magic") {
        patch_byte(0, 'X');
        try {
            load_rf(path.string());
            FAIL("expected RfIoError");
        } catch (const RfIoError& e) {
            CHECK(e.kind == RfIoError::Kind::BadMagic);
        }
    }
    SUBCASE("bad version") {
        patch_byte(4, 9);
        try {
            load_rf(path.string());
            FAIL("expected RfIoError");
        } catch (const RfIoError& e) {
            CHECK(e.kind == RfIoError::Kind::BadVersion);
        }
    }
    SUBCASE("unknown dtype") {
        patch_byte(8, 7);  // dtype code byte follows magic + version
        try {
            load_rf(path.string());
            FAIL("expected RfIoError");
        } catch (const RfIoError& e) {
            CHECK(e.kind == RfIoError::Kind::UnknownDtype);
        }
    }
    SUBCASE("truncated payload") {
        fs::resize_file(path, fs::file_size(path) - 7);
        try {
            load_rf(path.string());
            FAIL("expected RfIoError");
        } catch (const RfIoError& e) {
            CHECK(e.kind == RfIoError::Kind::Truncated);
        }
    }
    SUBCASE("missing file") {
        try {
            load_rf((temp_file("echobench_nonexistent.rfb")).string());
            FAIL("expected RfIoError");
        } catch (const RfIoError& e) {
            CHECK(e.kind == RfIoError::Kind::Io);
        }
    }
    fs::remove(path);
}
