#pragma once

// Steady-state benchmark runner: warmup passes, a timed inference loop around
// a synchronization hook, and the derived metrics (T_avg, FPS, MB/s,
// incremental J/run, peak tracked bytes).

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace echobench {

struct BenchSpec {
    int warmup_iters = 10;
    int timed_iters = 100;   // N_runs
    uint64_t input_bytes = 0;  // B_in
    std::string pipeline_id;
    std::string variant;
};

struct BenchResult {
    std::string pipeline_id;
    std::string variant;
    double t_avg = 0.0;           // seconds
    double fps = 0.0;             // 1 / t_avg
    double throughput_mbps = 0.0; // B_in / (t_avg * 1e6)
    std::optional<double> energy_j_per_run;
    std::optional<uint64_t> peak_mem_bytes;
};

struct PowerSample {
    double t = 0.0;      // seconds, monotonic
    double watts = 0.0;
};

double fps(double t_avg);
double throughput_mbps(double b_in, double t_avg);

/// Trapezoidal integral of max(watts - idle_watts, 0) over the trace,
/// divided by n_runs. Empty trace -> energy unavailable (nullopt).
std::optional<double> energy_per_run(const std::vector<PowerSample>& trace,
                                     double idle_watts, int n_runs);

/// High-water-mark byte accounting for the pipeline's tensor buffers.
/// Atomic counters; safe under internal pipeline parallelism.
class MemoryTracker {
public:
    void alloc(uint64_t bytes);
    void free(uint64_t bytes);  // throws std::logic_error if it exceeds current
    void reset_peak();          // peak := current
    uint64_t current() const { return current_.load(); }
    uint64_t peak() const { return peak_.load(); }

private:
    std::atomic<uint64_t> current_{0};
    std::atomic<uint64_t> peak_{0};
};

/// Polled power source. sample() may block its (dedicated) sampler thread;
/// nullopt means the provider has no more data.
class PowerProvider {
public:
    virtual ~PowerProvider() = default;
    virtual std::optional<double> sample() = 0;
};

/// Replays "t_seconds watts" pairs loaded from a file (one pair per line).
class ScriptedTraceProvider : public PowerProvider {
public:
    explicit ScriptedTraceProvider(std::vector<PowerSample> trace);
    static std::vector<PowerSample> load(const std::string& path);
    std::optional<double> sample() override;
    const std::vector<PowerSample>& trace() const { return trace_; }

private:
    std::vector<PowerSample> trace_;
    size_t next_ = 0;
};

/// Runs a telemetry command and parses one wattage number per output line.
class CommandPowerProvider : public PowerProvider {
public:
    explicit CommandPowerProvider(const std::string& command);
    ~CommandPowerProvider() override;
    std::optional<double> sample() override;

private:
    void* pipe_ = nullptr;  // FILE*
};

struct BenchProviders {
    PowerProvider* power = nullptr;
    double idle_watts = 0.0;
    double power_hz = 10.0;
    MemoryTracker* memory = nullptr;
};

/// Mean wattage over a sampling window; used for the idle baseline.
std::optional<double> measure_mean_power(PowerProvider& provider, double seconds, double hz);

/// Warmup passes (untimed), memory-peak reset, then timed_iters passes of
/// forward(); sync() each around one wall-clock window. The power sampler
/// runs concurrently on its own thread and never blocks the timed path.
BenchResult run_benchmark(const std::function<void()>& forward,
                          const std::function<void()>& sync,
                          const BenchSpec& spec, const BenchProviders& providers);

}  // namespace echobench
