#include "echobench/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "echobench/kernels.hpp"

namespace echobench {

DelayTable compute_delay_table(const ProbeGeometry& geom, const ImageGrid& grid,
                               const PipelineConfig& cfg, int n_s) {
    grid.validate();
    const int n_pixels = grid.n_pixels();
    const int n_ch = geom.n_elements;

    DelayTable t;
    t.n_pixels = n_pixels;
    t.n_channels = n_ch;
    t.n_s = n_s;
    t.delay_samples.resize(static_cast<size_t>(n_pixels) * n_ch);
    t.apod.resize(static_cast<size_t>(n_pixels) * n_ch);
    t.phase_per_sample = 2.0 * std::numbers::pi * cfg.fc / cfg.fs;

    std::vector<double> window(n_ch, 1.0);
    if (cfg.apodization == Apodization::Hann && n_ch > 1) {
        for (int c = 0; c < n_ch; ++c)
            window[c] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * c / (n_ch - 1));
    }

    for (int ix = 0; ix < grid.nx; ++ix) {
        const double x = grid.x_at(ix);
        for (int iz = 0; iz < grid.nz; ++iz) {
            const double z = grid.z_at(iz);
            const size_t p = grid.pixel(iz, ix);
            for (int c = 0; c < n_ch; ++c) {
                const double dx = x - geom.element_x[c];
                const double tau = (z + std::sqrt(dx * dx + z * z)) / cfg.c;
                const double d = tau * cfg.fs;
                const size_t e = p * n_ch + c;
                t.delay_samples[e] = d;
                const bool in_range = d >= 0.0 && d <= static_cast<double>(n_s - 2);
                t.apod[e] = in_range ? window[c] : 0.0;
            }
        }
    }
    return t;
}

SelectionMatrix build_selection_matrix(const DelayTable& table) {
    SelectionMatrix s;
    s.n_pixels = table.n_pixels;
    s.n_s = table.n_s;
    s.n_channels = table.n_channels;
    s.has_rotation = table.phase_per_sample != 0.0;
    s.channels.resize(table.n_channels);

    for (int c = 0; c < table.n_channels; ++c) {
        auto& ch = s.channels[c];
        ch.row_offsets.reserve(table.n_pixels + 1);
        ch.row_offsets.push_back(0);
        ch.col0.resize(table.n_pixels, -1);
        ch.w0.resize(table.n_pixels, 0.0f);
        ch.w1.resize(table.n_pixels, 0.0f);
        if (s.has_rotation) {
            ch.w0s.resize(table.n_pixels, 0.0f);
            ch.w1s.resize(table.n_pixels, 0.0f);
        }
        for (int p = 0; p < table.n_pixels; ++p) {
            const size_t e = static_cast<size_t>(p) * table.n_channels + c;
            const double a = table.apod[e];
            if (a > 0.0) {
                const double d = table.delay_samples[e];
                const double k = std::floor(d);
                const double frac = d - k;
                const double theta = table.phase_per_sample * d;
                const double ca = s.has_rotation ? std::cos(theta) : 1.0;
                const double sa = s.has_rotation ? std::sin(theta) : 0.0;
                const auto col = static_cast<int32_t>(k);
                const auto v0 = static_cast<float>(a * (1.0 - frac) * ca);
                const auto v1 = static_cast<float>(a * frac * ca);
                ch.cols.push_back(col);
                ch.cols.push_back(col + 1);
                ch.vals.push_back(v0);
                ch.vals.push_back(v1);
                ch.col0[p] = col;
                ch.w0[p] = v0;
                ch.w1[p] = v1;
                if (s.has_rotation) {
                    const auto u0 = static_cast<float>(a * (1.0 - frac) * sa);
                    const auto u1 = static_cast<float>(a * frac * sa);
                    ch.vals_s.push_back(u0);
                    ch.vals_s.push_back(u1);
                    ch.w0s[p] = u0;
                    ch.w1s[p] = u1;
                }
            }
            ch.row_offsets.push_back(static_cast<int32_t>(ch.cols.size()));
        }
    }
    return s;
}

size_t SelectionMatrix::bytes() const {
    size_t b = 0;
    for (const auto& ch : channels) {
        b += ch.row_offsets.size() * sizeof(int32_t);
        b += ch.cols.size() * sizeof(int32_t);
        b += (ch.vals.size() + ch.vals_s.size()) * sizeof(float);
        b += ch.col0.size() * sizeof(int32_t);
        b += (ch.w0.size() + ch.w1.size() + ch.w0s.size() + ch.w1s.size()) * sizeof(float);
    }
    return b;
}

DenseSelectionMatrix densify(const SelectionMatrix& sel) {
    DenseSelectionMatrix d;
    d.n_pixels = sel.n_pixels;
    d.n_s = sel.n_s;
    d.n_channels = sel.n_channels;
    d.has_rotation = sel.has_rotation;
    d.m.resize(sel.n_channels);
    if (sel.has_rotation) d.m_s.resize(sel.n_channels);
    for (int c = 0; c < sel.n_channels; ++c) {
        const auto& ch = sel.channels[c];
        auto& m = d.m[c];
        m.assign(static_cast<size_t>(sel.n_pixels) * sel.n_s, 0.0f);
        for (int p = 0; p < sel.n_pixels; ++p) {
            for (int32_t j = ch.row_offsets[p]; j < ch.row_offsets[p + 1]; ++j)
                m[static_cast<size_t>(p) * sel.n_s + ch.cols[j]] = ch.vals[j];
        }
        if (sel.has_rotation) {
            auto& ms = d.m_s[c];
            ms.assign(static_cast<size_t>(sel.n_pixels) * sel.n_s, 0.0f);
            for (int p = 0; p < sel.n_pixels; ++p) {
                for (int32_t j = ch.row_offsets[p]; j < ch.row_offsets[p + 1]; ++j)
                    ms[static_cast<size_t>(p) * sel.n_s + ch.cols[j]] = ch.vals_s[j];
            }
        }
    }
    return d;
}

size_t DenseSelectionMatrix::bytes() const {
    size_t b = 0;
    for (const auto& ch : m) b += ch.size() * sizeof(float);
    for (const auto& ch : m_s) b += ch.size() * sizeof(float);
    return b;
}

namespace {

void check_bf_out(const IqTensor& out, int n_pixels, int n_f) {
    if (out.n_s != n_pixels || out.n_c != 1 || out.n_f != n_f)
        throw std::invalid_argument("das: output dims mismatch");
}

}  // namespace

void das_gather(const IqTensor& iq, const DelayTable& table, IqTensor& out) {
    if (iq.n_s != table.n_s || iq.n_c != table.n_channels)
        throw std::invalid_argument("das_gather: table built for different n_s/n_c");
    check_bf_out(out, table.n_pixels, iq.n_f);

    const bool rot = table.phase_per_sample != 0.0;
    for (int f = 0; f < iq.n_f; ++f) {
        float* ore = out.re.data() + out.idx(0, 0, f);
        float* oim = out.im.data() + out.idx(0, 0, f);
        for (int p = 0; p < table.n_pixels; ++p) {
            float acc_re = 0.0f, acc_im = 0.0f;
            for (int c = 0; c < table.n_channels; ++c) {
                const size_t e = static_cast<size_t>(p) * table.n_channels + c;
                const double a = table.apod[e];
                if (a == 0.0) continue;
                const double d = table.delay_samples[e];
                const double kd = std::floor(d);
                const double frac = d - kd;
                const auto k = static_cast<size_t>(kd);
                const size_t base = iq.idx(0, c, f);
                const float are = iq.re[base + k], bre = iq.re[base + k + 1];
                const float aim = iq.im[base + k], bim = iq.im[base + k + 1];
                if (rot) {
                    const double theta = table.phase_per_sample * d;
                    const double ca = std::cos(theta);
                    const double sa = std::sin(theta);
                    const auto w0c = static_cast<float>(a * (1.0 - frac) * ca);
                    const auto w1c = static_cast<float>(a * frac * ca);
                    const auto w0s = static_cast<float>(a * (1.0 - frac) * sa);
                    const auto w1s = static_cast<float>(a * frac * sa);
                    acc_re += w0c * are + w1c * bre;
                    acc_re -= w0s * aim + w1s * bim;
                    acc_im += w0c * aim + w1c * bim;
                    acc_im += w0s * are + w1s * bre;
                } else {
                    const auto w0 = static_cast<float>(a * (1.0 - frac));
                    const auto w1 = static_cast<float>(a * frac);
                    acc_re += w0 * are + w1 * bre;
                    acc_im += w0 * aim + w1 * bim;
                }
            }
            ore[p] = acc_re;
            oim[p] = acc_im;
        }
    }
}

void das_sparse(const IqTensor& iq, const SelectionMatrix& sel, IqTensor& out) {
    if (iq.n_s != sel.n_s || iq.n_c != sel.n_channels)
        throw std::invalid_argument("das_sparse: matrix built for different n_s/n_c");
    check_bf_out(out, sel.n_pixels, iq.n_f);
    const KernelOps& ops = active_ops();
    const auto rows = static_cast<size_t>(sel.n_pixels);

    std::fill(out.re.begin(), out.re.end(), 0.0f);
    std::fill(out.im.begin(), out.im.end(), 0.0f);
    for (int f = 0; f < iq.n_f; ++f) {
        float* ore = out.re.data() + out.idx(0, 0, f);
        float* oim = out.im.data() + out.idx(0, 0, f);
        for (int c = 0; c < sel.n_channels; ++c) {
            const auto& ch = sel.channels[c];
            const size_t base = iq.idx(0, c, f);
            const float* xre = iq.re.data() + base;
            const float* xim = iq.im.data() + base;
            ops.spmv2_add_f32(ch.col0.data(), ch.w0.data(), ch.w1.data(), rows, xre, ore);
            if (sel.has_rotation)
                ops.spmv2_sub_f32(ch.col0.data(), ch.w0s.data(), ch.w1s.data(), rows, xim, ore);
            ops.spmv2_add_f32(ch.col0.data(), ch.w0.data(), ch.w1.data(), rows, xim, oim);
            if (sel.has_rotation)
                ops.spmv2_add_f32(ch.col0.data(), ch.w0s.data(), ch.w1s.data(), rows, xre, oim);
        }
    }
}

void das_dense_cnn(const IqTensor& iq, const DenseSelectionMatrix& sel, IqTensor& out) {
    if (iq.n_s != sel.n_s || iq.n_c != sel.n_channels)
        throw std::invalid_argument("das_dense_cnn: matrix built for different n_s/n_c");
    check_bf_out(out, sel.n_pixels, iq.n_f);
    const KernelOps& ops = active_ops();
    const auto rows = static_cast<size_t>(sel.n_pixels);
    const auto cols = static_cast<size_t>(sel.n_s);

    std::fill(out.re.begin(), out.re.end(), 0.0f);
    std::fill(out.im.begin(), out.im.end(), 0.0f);
    for (int f = 0; f < iq.n_f; ++f) {
        float* ore = out.re.data() + out.idx(0, 0, f);
        float* oim = out.im.data() + out.idx(0, 0, f);
        for (int c = 0; c < sel.n_channels; ++c) {
            const float* m = sel.m[c].data();
            const size_t base = iq.idx(0, c, f);
            const float* xre = iq.re.data() + base;
            const float* xim = iq.im.data() + base;
            ops.dense_matvec_add_f32(m, rows, cols, xre, ore);
            if (sel.has_rotation)
                ops.dense_matvec_sub_f32(sel.m_s[c].data(), rows, cols, xim, ore);
            ops.dense_matvec_add_f32(m, rows, cols, xim, oim);
            if (sel.has_rotation)
                ops.dense_matvec_add_f32(sel.m_s[c].data(), rows, cols, xre, oim);
        }
    }
}

IqTensor das_gather(const IqTensor& iq, const DelayTable& table) {
    IqTensor out(table.n_pixels, 1, iq.n_f);
    das_gather(iq, table, out);
    return out;
}

IqTensor das_sparse(const IqTensor& iq, const SelectionMatrix& sel) {
    IqTensor out(sel.n_pixels, 1, iq.n_f);
    das_sparse(iq, sel, out);
    return out;
}

IqTensor das_dense_cnn(const IqTensor& iq, const DenseSelectionMatrix& sel) {
    IqTensor out(sel.n_pixels, 1, iq.n_f);
    das_dense_cnn(iq, sel, out);
    return out;
}

}  // namespace echobench
