#include "echobench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace echobench {

namespace {

const char* kAbsent = "—";  // em-dash

std::string fmt(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct Row {
    std::string cells[7];
};

Row make_row(const BenchResult& r) {
    Row row;
    row.cells[0] = r.pipeline_id;
    row.cells[1] = r.variant;
    row.cells[2] = fmt(r.t_avg * 1e3, 3);
    row.cells[3] = fmt(r.fps, 1);
    row.cells[4] = fmt(r.throughput_mbps, 2);
    row.cells[5] = r.energy_j_per_run ? fmt(*r.energy_j_per_run, 3) : kAbsent;
    row.cells[6] = r.peak_mem_bytes
                       ? fmt(static_cast<double>(*r.peak_mem_bytes) / 1e9, 3)
                       : kAbsent;
    return row;
}

const char* kHeader[7] = {"Pipeline", "Variant", "T_avg (ms)", "FPS",
                          "MB/s",     "J/run",   "Peak Mem (GB)"};

}  // namespace

std::string emit_report(std::vector<BenchResult> results, ReportFormat format) {
    if (results.empty()) throw std::invalid_argument("emit_report: empty result list");
    std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        if (a.pipeline_id != b.pipeline_id) return a.pipeline_id < b.pipeline_id;
        return a.variant < b.variant;
    });

    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        for (int i = 0; i < 7; ++i) os << (i ? "," : "") << kHeader[i];
        os << "\r\n";
        for (const auto& r : results) {
            Row row = make_row(r);
            for (int i = 0; i < 7; ++i) os << (i ? "," : "") << row.cells[i];
            os << "\r\n";
        }
    } else {
        for (int i = 0; i < 7; ++i) os << "| " << kHeader[i] << ' ';
        os << "|\n";
        for (int i = 0; i < 7; ++i) os << "|---";
        os << "|\n";
        for (const auto& r : results) {
            Row row = make_row(r);
            for (int i = 0; i < 7; ++i) os << "| " << row.cells[i] << ' ';
            os << "|\n";
        }
    }
    return os.str();
}

std::vector<BenchResult> parse_report_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<BenchResult> out;
    bool header = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7)
            throw std::runtime_error("parse_report_csv: expected 7 columns, got " +
                                     std::to_string(cells.size()));
        BenchResult r;
        r.pipeline_id = cells[0];
        r.variant = cells[1];
        r.t_avg = std::stod(cells[2]) / 1e3;
        r.fps = std::stod(cells[3]);
        r.throughput_mbps = std::stod(cells[4]);
        if (cells[5] != kAbsent && !cells[5].empty()) r.energy_j_per_run = std::stod(cells[5]);
        if (cells[6] != kAbsent && !cells[6].empty())
            r.peak_mem_bytes = static_cast<uint64_t>(std::stod(cells[6]) * 1e9);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace echobench
