#pragma once

// Result-table rendering: CSV (RFC-4180-style, with header row) and markdown.
// Columns: Pipeline, Variant, T_avg (ms), FPS, MB/s, J/run, Peak Mem (GB).
// Missing metrics render as an em-dash.

#include <string>
#include <vector>

#include "echobench/bench.hpp"

namespace echobench {

enum class ReportFormat { Csv, Markdown };

std::string emit_report(std::vector<BenchResult> results, ReportFormat format);

/// Parses a CSV produced by emit_report back into results (em-dash or empty
/// field -> absent metric).
std::vector<BenchResult> parse_report_csv(const std::string& text);

}  // namespace echobench
