#include "satmimo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "satmimo/errors.hpp"
#include "satmimo/numeric.hpp"
#include "satmimo/precoder_lmo.hpp"
#include "satmimo/precoder_mm.hpp"
#include "satmimo/precoder_wmmse.hpp"
#include "satmimo/rate_eval.hpp"

namespace satmimo {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw NumericError("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

struct SeedContext {
  std::vector<UtChannelStats> stats;
  ChannelBatch eval_batch;
};

struct CellOutcome {
  ResultRow row;
  TraceFile trace;      // empty name when the algorithm has no iterations
  double elapsed_ms{0.0};
};

std::string trace_content(const SolveTrace& trace) {
  std::string out = "iter,objective\n";
  for (std::size_t i = 0; i < trace.objective_per_iteration.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(trace.objective_per_iteration[i]);
    out += '\n';
  }
  return out;
}

CellOutcome run_cell(const ScenarioConfig& cfg, const SeedContext& ctx, Algorithm algo,
                     double power_dbw, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const double power = dbw_to_watts(power_dbw);
  const SolveOptions opts{cfg.eps, cfg.max_iter};
  const CMat g_all = stack_responses(ctx.stats);

  CellOutcome out;
  out.row.algorithm = algorithm_name(algo);
  out.row.power_dbw = power_dbw;
  out.row.seed = seed;

  SolveTrace trace;
  PrecoderMatrix precoder;
  bool failed = false;
  try {
    switch (algo) {
      case Algorithm::kMm: {
        MmSolveResult r = solve_mm(ctx.stats, cfg.samples, mrt_precoder(g_all, power), opts,
                                   RngStream(seed).substream(kStreamTraining));
        precoder = std::move(r.precoder);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::kWmmse: {
        WmmseSolveResult r = solve_wmmse(ctx.stats, mrt_precoder(g_all, power), opts);
        precoder = std::move(r.precoder);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::kLmo: {
        LmoSolveResult r =
            solve_lmo(ctx.stats, uniform_multipliers(cfg.num_uts, power), opts);
        precoder = recover_precoders(r.multipliers, ctx.stats).precoder;
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::kAslnr:
        precoder = aslnr_precoders(ctx.stats, power);
        break;
      case Algorithm::kLos: {
        LosDesignResult r = los_only_design(ctx.stats, power, opts);
        precoder = std::move(r.precoder);
        trace = std::move(r.trace);
        break;
      }
      case Algorithm::kWf:
        precoder = recover_precoders(waterfilling(ctx.stats, power), ctx.stats).precoder;
        break;
    }
  } catch (const DegenerateDirectionError&) {
    failed = true;
  } catch (const RecoveryError&) {
    failed = true;
  }

  if (failed) {
    out.row.sum_rate = std::numeric_limits<double>::quiet_NaN();
    out.row.stderr_sum = std::numeric_limits<double>::quiet_NaN();
    out.row.iterations = 0;
  } else {
    const RateReport report = ergodic_sum_rate(precoder, ctx.stats, ctx.eval_batch);
    out.row.sum_rate = report.sum_rate;
    out.row.stderr_sum = report.sum_stderr;
    out.row.iterations = trace.iterations;
    if (!trace.objective_per_iteration.empty()) {
      out.trace.name = algorithm_name(algo) + "_" + format_double(power_dbw) + "_" +
                       std::to_string(seed) + ".trace.csv";
      out.trace.content = trace_content(trace);
    }
  }
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& cfg, int threads) {
  if (threads < 1) throw std::invalid_argument("run_experiment: threads must be >= 1");

  std::vector<SeedContext> contexts;
  contexts.reserve(cfg.seeds.size());
  for (const std::uint64_t seed : cfg.seeds) {
    SeedContext ctx;
    ctx.stats = build_instance(cfg, seed);
    ctx.eval_batch =
        sample_channel(ctx.stats, cfg.samples, RngStream(seed).substream(kStreamEvaluation));
    contexts.push_back(std::move(ctx));
  }

  struct Cell {
    std::size_t seed_idx;
    std::size_t power_idx;
    Algorithm algo;
  };
  std::vector<Cell> cells;
  for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
    for (std::size_t pi = 0; pi < cfg.power_grid_dbw.size(); ++pi) {
      for (const Algorithm algo : cfg.algorithms) {
        cells.push_back({si, pi, algo});
      }
    }
  }

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::min<int>(threads, static_cast<int>(cells.size()));
  const auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& cell = cells[i];
      outcomes[i] = run_cell(cfg, contexts[cell.seed_idx], cell.algo,
                             cfg.power_grid_dbw[cell.power_idx], cfg.seeds[cell.seed_idx]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  // Deterministic ordered reduction: cell execution order never matters.
  std::vector<std::size_t> order(outcomes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ResultRow& ra = outcomes[a].row;
    const ResultRow& rb = outcomes[b].row;
    if (ra.algorithm != rb.algorithm) return ra.algorithm < rb.algorithm;
    if (ra.power_dbw != rb.power_dbw) return ra.power_dbw < rb.power_dbw;
    return ra.seed < rb.seed;
  });

  ExperimentResult result;
  result.rows.reserve(outcomes.size());
  result.timings_ms.reserve(outcomes.size());
  for (const std::size_t i : order) {
    result.rows.push_back(outcomes[i].row);
    result.timings_ms.push_back(outcomes[i].elapsed_ms);
    if (!outcomes[i].trace.name.empty()) result.traces.push_back(std::move(outcomes[i].trace));
  }
  return result;
}

std::string csv_string(const std::vector<ResultRow>& rows) {
  std::string out = "algorithm,power_dbw,seed,sum_rate_bps_hz,stderr,iterations,wall_ms\n";
  for (const ResultRow& row : rows) {
    out += row.algorithm;
    out += ',';
    out += format_double(row.power_dbw);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += format_double(row.sum_rate);
    out += ',';
    out += format_double(row.stderr_sum);
    out += ',';
    out += std::to_string(row.iterations);
    out += ',';
    out += format_double(row.wall_ms);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("emit_csv: cannot open '" + path + "' for writing");
  out << csv_string(rows);
  out.flush();
  if (!out) throw IoError("emit_csv: write to '" + path + "' failed");
}

std::vector<ResultRow> parse_result_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::stringstream ss(text);
  std::string line;
  bool header = true;
  while (std::getline(ss, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    ResultRow row;
    std::getline(ls, field, ',');
    row.algorithm = field;
    std::getline(ls, field, ',');
    row.power_dbw = std::stod(field);
    std::getline(ls, field, ',');
    row.seed = static_cast<std::uint64_t>(std::stoull(field));
    std::getline(ls, field, ',');
    row.sum_rate = std::stod(field);
    std::getline(ls, field, ',');
    row.stderr_sum = std::stod(field);
    std::getline(ls, field, ',');
    row.iterations = std::stoi(field);
    std::getline(ls, field, ',');
    row.wall_ms = std::stod(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_traces(const std::vector<TraceFile>& traces, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("write_traces: cannot create directory '" + dir + "'");
  for (const TraceFile& trace : traces) {
    const std::filesystem::path path = std::filesystem::path(dir) / trace.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_traces: cannot open '" + path.string() + "'");
    out << trace.content;
    if (!out) throw IoError("write_traces: write to '" + path.string() + "' failed");
  }
}

}  // namespace satmimo
