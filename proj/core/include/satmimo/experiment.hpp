#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "satmimo/scenario.hpp"

namespace satmimo {

// One experiment cell. `wall_ms` is kept at zero in emitted results so the
// config -> CSV mapping stays a pure function; measured timings travel
// separately in ExperimentResult.
struct ResultRow {
  std::string algorithm;
  double power_dbw{0.0};
  std::uint64_t seed{0};
  double sum_rate{0.0};
  double stderr_sum{0.0};
  int iterations{0};
  double wall_ms{0.0};
};

struct TraceFile {
  std::string name;     // <algo>_<power>_<seed>.trace.csv
  std::string content;  // "iter,objective" lines
};

struct ExperimentResult {
  std::vector<ResultRow> rows;      // sorted by (algorithm, power, seed)
  std::vector<TraceFile> traces;    // iterative algorithms only
  std::vector<double> timings_ms;   // aligned with rows; informational
};

// Runs every (seed, power, algorithm) cell. Per seed, placements and the
// evaluation batch are drawn once and shared by all algorithms and powers,
// so comparisons are paired. Cells may run on `threads` workers; output is
// a deterministic function of the config alone.
ExperimentResult run_experiment(const ScenarioConfig& cfg, int threads = 1);

// Shortest round-trip decimal formatting, locale-independent.
std::string format_double(double x);

std::string csv_string(const std::vector<ResultRow>& rows);

// Writes the header plus one line per row. Empty rows raise
// std::invalid_argument before any file is created; unwritable paths raise
// IoError.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

std::vector<ResultRow> parse_result_csv(const std::string& text);

void write_traces(const std::vector<TraceFile>& traces, const std::string& dir);

}  // namespace satmimo
