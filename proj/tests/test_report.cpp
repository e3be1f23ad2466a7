#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "echobench/report.hpp"

using namespace echobench;

namespace {

BenchResult gpu_style(const std::string& pipeline, const std::string& variant, double t_avg) {
    BenchResult r;
    r.pipeline_id = pipeline;
    r.variant = variant;
    r.t_avg = t_avg;
    r.fps = fps(t_avg);
    r.throughput_mbps = throughput_mbps(5472000.0, t_avg);
    r.energy_j_per_run = 0.047;
    r.peak_mem_bytes = 337000000;
    return r;
}

BenchResult tpu_style(const std::string& pipeline, const std::string& variant, double t_avg) {
    BenchResult r;
    r.pipeline_id = pipeline;
    r.variant = variant;
    r.t_avg = t_avg;
    r.fps = fps(t_avg);
    r.throughput_mbps = throughput_mbps(5472000.0, t_avg);
    return r;  // no energy or memory provider on this target
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("csv has the full seven-column header and CRLF endings") {
    auto text = emit_report({gpu_style("RF2IQ_DAS_BMODE", "Dynamic indexing", 0.787e-3)},
                            ReportFormat::Csv);
    CHECK(text.find("Pipeline,Variant,T_avg (ms),FPS,MB/s,J/run,Peak Mem (GB)\r\n") == 0);
    auto lines = lines_of(text);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find("RF2IQ_DAS_BMODE,Dynamic indexing,0.787,1270.6,6952.99") == 0);
    CHECK(text.find("\r\n") != std::string::npos);
}

TEST_CASE("absent metrics render as em-dash") {
    auto text = emit_report({tpu_style("RF2IQ_DAS_BMODE", "Full CNN", 0.01)}, ReportFormat::Csv);
    auto lines = lines_of(text);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find(",—,—") != std::string::npos);

    auto md = emit_report({tpu_style("RF2IQ_DAS_BMODE", "Full CNN", 0.01)}, ReportFormat::Markdown);
    CHECK(md.find("| — | — |") != std::string::npos);
}

TEST_CASE("markdown table structure") {
    auto md = emit_report({gpu_style("A", "x", 1e-3), gpu_style("A", "y", 2e-3)},
                          ReportFormat::Markdown);
    auto lines = lines_of(md);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "| Pipeline | Variant | T_avg (ms) | FPS | MB/s | J/run | Peak Mem (GB) |");
    CHECK(lines[1] == "|---|---|---|---|---|---|---|");
}

TEST_CASE("rows sort by pipeline then variant regardless of insertion order") {
    std::vector<BenchResult> results = {
        gpu_style("RF2IQ_DAS_POWERDOPPLER", "Sparse matrices", 1e-3),
        gpu_style("RF2IQ_DAS_BMODE", "Full CNN", 1e-3),
        gpu_style("RF2IQ_DAS_BMODE", "Dynamic indexing", 1e-3),
        gpu_style("RF2IQ_DAS_DOPPLER", "Sparse matrices", 1e-3),
    };
    auto a = emit_report(results, ReportFormat::Csv);
    std::reverse(results.begin(), results.end());
    auto b = emit_report(results, ReportFormat::Csv);
    CHECK(a == b);

    auto lines = lines_of(a);
    REQUIRE(lines.size() == 5);
    CHECK(lines[1].find("RF2IQ_DAS_BMODE,Dynamic indexing") == 0);
    CHECK(lines[2].find("RF2IQ_DAS_BMODE,Full CNN") == 0);
    CHECK(lines[3].find("RF2IQ_DAS_DOPPLER") == 0);
    CHECK(lines[4].find("RF2IQ_DAS_POWERDOPPLER") == 0);
}

TEST_CASE("csv parse round trip") {
    std::vector<BenchResult> results = {
        gpu_style("RF2IQ_DAS_BMODE", "Dynamic indexing", 0.787e-3),
        tpu_style("RF2IQ_DAS_DOPPLER", "Full CNN", 0.181),
    };
    auto parsed = parse_report_csv(emit_report(results, ReportFormat::Csv));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].pipeline_id == "RF2IQ_DAS_BMODE");
    CHECK(parsed[0].t_avg == doctest::Approx(0.787e-3));
    CHECK(parsed[0].fps == doctest::Approx(1270.6).epsilon(1e-3));
    REQUIRE(parsed[0].energy_j_per_run.has_value());
    CHECK(*parsed[0].energy_j_per_run == doctest::Approx(0.047));
    REQUIRE(parsed[0].peak_mem_bytes.has_value());
    CHECK(*parsed[0].peak_mem_bytes == doctest::Approx(337000000.0).epsilon(1e-2));
    CHECK(parsed[1].pipeline_id == "RF2IQ_DAS_DOPPLER");
    CHECK_FALSE(parsed[1].energy_j_per_run.has_value());
    CHECK_FALSE(parsed[1].peak_mem_bytes.has_value());
}

TEST_CASE("empty result list is rejected") {
    CHECK_THROWS_AS(emit_report({}, ReportFormat::Csv), std::invalid_argument);
}
