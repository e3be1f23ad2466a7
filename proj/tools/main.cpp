// echobench CLI: synthesize RF datasets, run RF-to-image pipelines, and
// benchmark them with the steady-state harness.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 pipeline error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "echobench/bench.hpp"
#include "echobench/pipeline.hpp"
#include "echobench/report.hpp"
#include "echobench/rf_io.hpp"

using nlohmann::json;
using namespace echobench;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitPipeline = 4;

struct AppConfig {
    PipelineConfig pipe;
    int n_elements = 32;
    double pitch = 1e-4;
    int n_l = 640;
    std::string dtype = "float32";
    ImageGrid grid{-6e-3, 6e-3, 8e-3, 22e-3, 49, 49};
    std::vector<Scatterer> scatterers{{0.0, 0.015, 1.0, 0.0}};
    int warmup = 10;
    int iters = 100;
};

void merge_config(AppConfig& c, const json& j) {
    if (j.contains("physics")) {
        const auto& p = j["physics"];
        c.pipe.fs = p.value("fs", c.pipe.fs);
        c.pipe.fc = p.value("fc", c.pipe.fc);
        c.pipe.c = p.value("c", c.pipe.c);
        c.pipe.prf = p.value("prf", c.pipe.prf);
    }
    if (j.contains("probe")) {
        const auto& p = j["probe"];
        c.n_elements = p.value("n_elements", c.n_elements);
        c.pitch = p.value("pitch", c.pitch);
    }
    if (j.contains("rf")) {
        const auto& p = j["rf"];
        c.n_l = p.value("n_l", c.n_l);
        c.pipe.n_f = p.value("n_f", c.pipe.n_f);
        c.dtype = p.value("dtype", c.dtype);
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        c.grid.x_min = g.value("x_min", c.grid.x_min);
        c.grid.x_max = g.value("x_max", c.grid.x_max);
        c.grid.z_min = g.value("z_min", c.grid.z_min);
        c.grid.z_max = g.value("z_max", c.grid.z_max);
        c.grid.nx = g.value("nx", c.grid.nx);
        c.grid.nz = g.value("nz", c.grid.nz);
    }
    if (j.contains("pipeline")) {
        const auto& p = j["pipeline"];
        c.pipe.dynamic_range_db = p.value("dynamic_range_db", c.pipe.dynamic_range_db);
        c.pipe.smoothing_kernel = p.value("smoothing_kernel", c.pipe.smoothing_kernel);
        c.pipe.fir_taps = p.value("fir_taps", c.pipe.fir_taps);
        std::string apod = p.value("apodization", std::string("hann"));
        if (apod == "hann")
            c.pipe.apodization = Apodization::Hann;
        else if (apod == "rectangular")
            c.pipe.apodization = Apodization::Rectangular;
        else
            throw std::runtime_error("config: unknown apodization: " + apod);
    }
    if (j.contains("scatterers")) {
        c.scatterers.clear();
        for (const auto& s : j["scatterers"]) {
            Scatterer sc;
            sc.x = s.value("x", 0.0);
            sc.z = s.value("z", 0.0);
            sc.amplitude = s.value("amplitude", 1.0);
            sc.v_axial = s.value("v_axial", 0.0);
            c.scatterers.push_back(sc);
        }
    }
    if (j.contains("bench")) {
        const auto& b = j["bench"];
        c.warmup = b.value("warmup", c.warmup);
        c.iters = b.value("iters", c.iters);
    }
}

AppConfig load_config(const std::string& path) {
    AppConfig c;
    if (path.empty()) return c;
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    json j = json::parse(is);
    merge_config(c, j);
    return c;
}

Variant parse_variant(const std::string& s) {
    if (s == "gather") return Variant::Gather;
    if (s == "cnn") return Variant::FullCnn;
    if (s == "sparse") return Variant::Sparse;
    throw CLI::ValidationError("--variant", "must be one of gather|cnn|sparse");
}

Modality parse_modality(const std::string& s) {
    if (s == "bmode") return Modality::Bmode;
    if (s == "doppler") return Modality::ColorDoppler;
    if (s == "power") return Modality::PowerDoppler;
    throw CLI::ValidationError("--modality", "must be one of bmode|doppler|power");
}

void write_pgm(const std::string& path, const float* img, int nz, int nx,
               float lo, float hi) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output: " + path);
    os << "P5\n" << nx << ' ' << nz << "\n255\n";
    const float span = hi > lo ? hi - lo : 1.0f;
    for (int iz = 0; iz < nz; ++iz) {
        for (int ix = 0; ix < nx; ++ix) {
            float v = (img[static_cast<size_t>(ix) * nz + iz] - lo) / span;
            v = std::min(std::max(v, 0.0f), 1.0f);
            os.put(static_cast<char>(std::lround(v * 255.0f)));
        }
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

// raw dump: per output frame, row-major nz x nx float32
void write_raw(const std::string& path, const Pipeline& p) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output: " + path);
    const auto img = p.image();
    const int nz = p.nz(), nx = p.nx();
    const size_t np = static_cast<size_t>(nz) * nx;
    for (int f = 0; f < p.output_frames(); ++f) {
        const float* frame = img.data() + np * static_cast<size_t>(f);
        for (int iz = 0; iz < nz; ++iz)
            for (int ix = 0; ix < nx; ++ix) {
                float v = frame[static_cast<size_t>(ix) * nz + iz];
                os.write(reinterpret_cast<const char*>(&v), sizeof(float));
            }
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

void export_images(const Pipeline& p, const std::string& prefix) {
    const auto img = p.image();
    const int nz = p.nz(), nx = p.nx();
    float lo = 0.0f, hi = 1.0f;
    if (p.config().modality == Modality::ColorDoppler) {
        const auto vn = static_cast<float>(p.v_nyquist());
        lo = -vn;
        hi = vn;
    } else if (p.config().modality == Modality::PowerDoppler) {
        lo = -120.0f;
        hi = *std::max_element(img.begin(), img.end());
    }
    write_pgm(prefix + ".pgm", img.data(), nz, nx, lo, hi);  // frame 0
    write_raw(prefix + ".f32", p);
}

int cmd_synth(const std::string& config_path, const std::string& out_path) {
    AppConfig c = load_config(config_path);
    c.pipe.validate();
    auto geom = ProbeGeometry::linear(c.n_elements, c.pitch, c.pipe.c);
    RfTensor rf = synth_rf(c.scatterers, geom, c.pipe, c.n_l);

    RfFileHeader h;
    h.dtype = c.dtype == "int16" ? RfDtype::Int16 : RfDtype::Float32;
    h.n_l = static_cast<uint32_t>(rf.n_l);
    h.n_c = static_cast<uint32_t>(rf.n_c);
    h.n_f = static_cast<uint32_t>(rf.n_f);
    h.fs = c.pipe.fs;
    h.fc = c.pipe.fc;
    h.c = c.pipe.c;
    h.prf = c.pipe.prf;
    save_rf(out_path, rf, h);
    std::cout << "wrote " << out_path << " payload_bytes=" << h.payload_bytes() << "\n";
    return 0;
}

struct LoadedPipeline {
    RfTensor rf;
    RfFileHeader header;
    std::unique_ptr<Pipeline> pipeline;
};

LoadedPipeline make_pipeline(const std::string& input, const std::string& config_path,
                             Variant variant, Modality modality, MemoryTracker* tracker) {
    LoadedPipeline lp;
    auto [rf, header] = load_rf(input);
    lp.rf = std::move(rf);
    lp.header = header;

    AppConfig c = load_config(config_path);
    c.pipe.fs = header.fs;
    c.pipe.fc = header.fc;
    c.pipe.c = header.c;
    c.pipe.prf = header.prf;
    c.pipe.n_f = lp.rf.n_f;
    c.pipe.variant = variant;
    c.pipe.modality = modality;

    auto geom = ProbeGeometry::linear(lp.rf.n_c, c.pitch, c.pipe.c);
    lp.pipeline = std::make_unique<Pipeline>(c.pipe, geom, c.grid, lp.rf.n_l, tracker);
    return lp;
}

int cmd_run(const std::string& input, const std::string& config_path,
            const std::string& variant_s, const std::string& modality_s,
            const std::string& out_prefix) {
    LoadedPipeline lp = make_pipeline(input, config_path, parse_variant(variant_s),
                                      parse_modality(modality_s), nullptr);
    lp.pipeline->forward(lp.rf);
    export_images(*lp.pipeline, out_prefix);
    std::cout << "wrote " << out_prefix << ".pgm and " << out_prefix << ".f32\n";
    return 0;
}

int cmd_bench(const std::string& input, const std::string& config_path,
              const std::string& variant_s, const std::string& modality_s,
              std::optional<int> warmup, std::optional<int> iters,
              const std::string& power_cmd, const std::string& power_trace,
              std::optional<double> idle_watts, double idle_window, bool no_energy,
              const std::string& format, const std::string& out_path) {
    MemoryTracker tracker;
    const Variant variant = parse_variant(variant_s);
    const Modality modality = parse_modality(modality_s);
    LoadedPipeline lp = make_pipeline(input, config_path, variant, modality, &tracker);
    AppConfig c = load_config(config_path);

    BenchSpec spec;
    spec.warmup_iters = warmup.value_or(c.warmup);
    spec.timed_iters = iters.value_or(c.iters);
    spec.input_bytes = lp.header.payload_bytes();
    spec.pipeline_id = to_string(modality);
    spec.variant = to_string(variant);

    BenchProviders providers;
    providers.memory = &tracker;
    std::unique_ptr<PowerProvider> power;
    if (!no_energy && !power_cmd.empty()) {
        try {
            power = std::make_unique<CommandPowerProvider>(power_cmd);
            if (idle_watts) {
                providers.idle_watts = *idle_watts;
            } else {
                auto idle = measure_mean_power(*power, idle_window, providers.power_hz);
                providers.idle_watts = idle.value_or(0.0);
            }
            providers.power = power.get();
        } catch (const std::exception& e) {
            std::cerr << "warning: power provider unavailable: " << e.what() << "\n";
            providers.power = nullptr;  // degrade to absent energy field
        }
    }

    Pipeline& p = *lp.pipeline;
    const RfTensor& rf = lp.rf;
    BenchResult result = run_benchmark([&] { p.forward(rf); }, [] {}, spec, providers);

    // scripted trace: energy computed from the file, idle per flag
    if (!no_energy && !power_trace.empty()) {
        auto trace = ScriptedTraceProvider::load(power_trace);
        result.energy_j_per_run = energy_per_run(trace, idle_watts.value_or(0.0),
                                                 spec.timed_iters);
    }

    const ReportFormat fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Markdown;
    const std::string text = emit_report({result}, fmt);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        os << text;
        if (!os) throw std::runtime_error("write failed: " + out_path);
    }
    return 0;
}

int cmd_report(const std::string& input, const std::string& format,
               const std::string& out_path) {
    std::ifstream is(input);
    if (!is) throw std::runtime_error("cannot open report input: " + input);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    auto results = parse_report_csv(text);
    const ReportFormat fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Markdown;
    const std::string rendered = emit_report(results, fmt);
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream os(out_path);
        os << rendered;
        if (!os) throw std::runtime_error("write failed: " + out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic ultrasound RF-to-image pipelines and benchmark harness"};
    app.require_subcommand(1);

    std::string config_path, input, out_path, out_prefix = "out";
    std::string variant_s = "gather", modality_s = "bmode", format = "markdown";
    std::string power_cmd, power_trace;
    std::optional<int> warmup, iters;
    std::optional<double> idle_watts;
    double idle_window = 2.0;
    bool no_energy = false;

    auto* synth = app.add_subcommand("synth", "Synthesize an RF dataset (RFB1 file)");
    synth->add_option("--config", config_path, "JSON config file");
    synth->add_option("--out", out_path, "output RFB1 path")->required();

    auto* run = app.add_subcommand("run", "Run one forward pass, write PGM + raw float dump");
    run->add_option("--input", input, "RFB1 input file")->required();
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--variant", variant_s, "gather|cnn|sparse");
    run->add_option("--modality", modality_s, "bmode|doppler|power");
    run->add_option("--out", out_prefix, "output prefix");

    auto* bench = app.add_subcommand("bench", "Benchmark a pipeline and emit a report");
    bench->add_option("--input", input, "RFB1 input file")->required();
    bench->add_option("--config", config_path, "JSON config file");
    bench->add_option("--variant", variant_s, "gather|cnn|sparse");
    bench->add_option("--modality", modality_s, "bmode|doppler|power");
    bench->add_option("--warmup", warmup, "warmup iterations");
    bench->add_option("--iters", iters, "timed iterations");
    bench->add_option("--power-cmd", power_cmd, "telemetry command, one wattage per line");
    bench->add_option("--power-trace", power_trace, "scripted trace file: 't_seconds watts' lines");
    bench->add_option("--idle-watts", idle_watts, "idle power baseline (W)");
    bench->add_option("--idle-window", idle_window, "idle measurement window (s)");
    bench->add_flag("--no-energy", no_energy, "disable energy reporting");
    bench->add_option("--format", format, "markdown|csv");
    bench->add_option("--out", out_path, "report output path (default stdout)");

    auto* report = app.add_subcommand("report", "Re-render a results CSV");
    report->add_option("--input", input, "results CSV")->required();
    report->add_option("--format", format, "markdown|csv");
    report->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (synth->parsed()) return cmd_synth(config_path, out_path);
        if (run->parsed())
            return cmd_run(input, config_path, variant_s, modality_s, out_prefix);
        if (bench->parsed())
            return cmd_bench(input, config_path, variant_s, modality_s, warmup, iters,
                             power_cmd, power_trace, idle_watts, idle_window, no_energy,
                             format, out_path);
        if (report->parsed()) return cmd_report(input, format, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RfIoError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
