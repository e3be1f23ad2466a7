#include "echobench/bench.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace echobench {

using Clock = std::chrono::steady_clock;

namespace {
double now_seconds() {
    return std::chrono::duration<double>(Clock::now().time_since_epoch()).count();
}
}  // namespace

double fps(double t_avg) {
    if (t_avg <= 0.0) throw std::invalid_argument("fps: t_avg must be positive");
    return 1.0 / t_avg;
}

double throughput_mbps(double b_in, double t_avg) {
    if (b_in <= 0.0 || t_avg <= 0.0)
        throw std::invalid_argument("throughput_mbps: arguments must be positive");
    return b_in / (t_avg * 1e6);
}

std::optional<double> energy_per_run(const std::vector<PowerSample>& trace,
                                     double idle_watts, int n_runs) {
    if (n_runs < 1) throw std::invalid_argument("energy_per_run: n_runs must be >= 1");
    if (trace.empty()) return std::nullopt;
    double e_total = 0.0;
    for (size_t i = 0; i + 1 < trace.size(); ++i) {
        const double dt = trace[i + 1].t - trace[i].t;
        if (dt < 0) throw std::invalid_argument("energy_per_run: trace timestamps decrease");
        const double p0 = std::max(trace[i].watts - idle_watts, 0.0);
        const double p1 = std::max(trace[i + 1].watts - idle_watts, 0.0);
        e_total += dt * 0.5 * (p0 + p1);
    }
    return e_total / n_runs;
}

void MemoryTracker::alloc(uint64_t bytes) {
    const uint64_t cur = current_.fetch_add(bytes) + bytes;
    uint64_t prev = peak_.load();
    while (cur > prev && !peak_.compare_exchange_weak(prev, cur)) {
    }
}

void MemoryTracker::free(uint64_t bytes) {
    uint64_t prev = current_.load();
    do {
        if (bytes > prev) throw std::logic_error("MemoryTracker: free exceeds current");
    } while (!current_.compare_exchange_weak(prev, prev - bytes));
}

void MemoryTracker::reset_peak() { peak_.store(current_.load()); }

ScriptedTraceProvider::ScriptedTraceProvider(std::vector<PowerSample> trace)
    : trace_(std::move(trace)) {}

std::vector<PowerSample> ScriptedTraceProvider::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("ScriptedTraceProvider: cannot open " + path);
    std::vector<PowerSample> trace;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        PowerSample s;
        if (ls >> s.t >> s.watts) trace.push_back(s);
    }
    return trace;
}

std::optional<double> ScriptedTraceProvider::sample() {
    if (next_ >= trace_.size()) return std::nullopt;
    return trace_[next_++].watts;
}

CommandPowerProvider::CommandPowerProvider(const std::string& command) {
    pipe_ = popen(command.c_str(), "r");
    if (!pipe_) throw std::runtime_error("CommandPowerProvider: cannot run: " + command);
}

CommandPowerProvider::~CommandPowerProvider() {
    if (pipe_) pclose(static_cast<FILE*>(pipe_));
}

std::optional<double> CommandPowerProvider::sample() {
    char buf[256];
    if (!fgets(buf, sizeof(buf), static_cast<FILE*>(pipe_))) return std::nullopt;
    char* end = nullptr;
    const double w = std::strtod(buf, &end);
    if (end == buf) return std::nullopt;
    return w;
}

std::optional<double> measure_mean_power(PowerProvider& provider, double seconds, double hz) {
    const auto period = std::chrono::duration<double>(1.0 / hz);
    const auto deadline = Clock::now() + std::chrono::duration<double>(seconds);
    double sum = 0.0;
    int n = 0;
    while (Clock::now() < deadline) {
        if (auto w = provider.sample()) {
            sum += *w;
            ++n;
        } else {
            break;
        }
        std::this_thread::sleep_for(period);
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

BenchResult run_benchmark(const std::function<void()>& forward,
                          const std::function<void()>& sync,
                          const BenchSpec& spec, const BenchProviders& providers) {
    if (spec.timed_iters < 1)
        throw std::invalid_argument("run_benchmark: timed_iters must be >= 1");
    if (spec.input_bytes == 0)
        throw std::invalid_argument("run_benchmark: input_bytes must be positive");

    for (int i = 0; i < spec.warmup_iters; ++i) {
        forward();
        sync();
    }
    if (providers.memory) providers.memory->reset_peak();

    // power sampler owns its trace; joined before the trace is read
    std::vector<PowerSample> trace;
    std::atomic<bool> stop{false};
    std::thread sampler;
    if (providers.power) {
        sampler = std::thread([&] {
            const auto period = std::chrono::duration<double>(1.0 / providers.power_hz);
            while (!stop.load(std::memory_order_relaxed)) {
                auto w = providers.power->sample();
                if (!w) break;
                trace.push_back({now_seconds(), *w});
                std::this_thread::sleep_for(period);
            }
        });
    }

    const auto t0 = Clock::now();
    for (int i = 0; i < spec.timed_iters; ++i) {
        try {
            forward();
            sync();
        } catch (const std::exception& e) {
            stop.store(true);
            if (sampler.joinable()) sampler.join();
            throw std::runtime_error("run_benchmark: pipeline failed at timed iteration " +
                                     std::to_string(i) + ": " + e.what());
        }
    }
    const auto t1 = Clock::now();

    stop.store(true);
    if (sampler.joinable()) sampler.join();

    BenchResult r;
    r.pipeline_id = spec.pipeline_id;
    r.variant = spec.variant;
    r.t_avg = std::chrono::duration<double>(t1 - t0).count() / spec.timed_iters;
    r.fps = fps(r.t_avg);
    r.throughput_mbps = throughput_mbps(static_cast<double>(spec.input_bytes), r.t_avg);
    if (providers.power)
        r.energy_j_per_run = energy_per_run(trace, providers.idle_watts, spec.timed_iters);
    if (providers.memory) r.peak_mem_bytes = providers.memory->peak();
    return r;
}

}  // namespace echobench
