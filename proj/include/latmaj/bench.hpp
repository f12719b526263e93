#pragma once

#include "latmaj/latgen.hpp"
#include "latmaj/reduction.hpp"
#include "latmaj/selector.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latmaj {

/// Outcome of one reduction of one generated lattice.
struct TrialResult {
  Family family = Family::uniform;
  std::size_t d = 0;
  std::string selector;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t N = 0;
  std::size_t W = 0;
  std::size_t scans = 0;
  double delta0 = 0;
  double final_sum_sq = 0;
  double log_det = 0;
  std::int64_t wall_ns = 0;
  bool terminal = false;
  // Report's own check and an independent recheck of the terminal basis.
  bool contract_ok = false;
  bool phi_monotone = true;
  std::size_t phi_increases = 0;
  std::optional<double> alpha0;
  std::size_t exact_fallbacks = 0;
  std::string error;  // empty on success
  std::vector<double> final_profile;
};

/// Generates the lattice of (family, d, seed) and reduces it. Exceptions from
/// the reduction are caught and stored in `error`.
TrialResult run_trial(Family family, std::size_t d, const SelectorSpec& selector, std::uint64_t seed,
                      const ReductionParams& params, const TraceSink& sink = {});

struct BenchConfig {
  std::vector<Family> families;
  std::vector<std::size_t> dims;
  std::vector<SelectorSpec> selectors;
  std::size_t n = 30;
  ReductionParams params;
  std::uint64_t seed = 42;  // trial i uses seed + i, shared by every selector of a cell
  unsigned threads = 0;     // 0: hardware concurrency
  std::optional<std::string> trace_dir;
};

struct MetricSummary {
  double mean = 0;
  std::optional<double> stderr_;  // sample stddev / sqrt(n); unset when n < 2
};

MetricSummary summarize(const std::vector<double>& values);

struct BenchRow {
  Family family = Family::uniform;
  std::size_t d = 0;
  std::string selector;
  std::size_t n_trials = 0;
  std::size_t n_failed = 0;
  std::uint64_t seed_base = 0;
  std::uint64_t config_hash = 0;
  MetricSummary N;
  MetricSummary W;
  MetricSummary delta0;
  MetricSummary final_sum_sq;
  MetricSummary wall_ms;
  std::optional<double> alpha0_mean;
  bool all_terminal = true;
  bool all_contract = true;
};

struct GridResult {
  std::vector<BenchRow> rows;        // family, d, selector order of the config
  std::vector<TrialResult> trials;   // same order, trial index innermost
};

/// FNV-1a 64 of the canonical cell description (family, d, selector, n,
/// delta, seed, refresh period, move cap, potential guard).
std::uint64_t config_hash(const BenchConfig& config, Family family, std::size_t d,
                          const SelectorSpec& selector);

/// Runs every (family, d, selector, trial) job, `threads` at a time.
/// Deterministic apart from timing fields.
GridResult run_grid(const BenchConfig& config,
                    const std::function<void(const TrialResult&)>& on_trial = {});

BenchRow aggregate(const BenchConfig& config, Family family, std::size_t d, const SelectorSpec& selector,
                   const std::vector<TrialResult>& trials);

/// Fixed column order; timing columns come last.
std::string csv_header();
std::string csv_row(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// One JSON object per trial.
void write_trials_jsonl(std::ostream& out, const std::vector<TrialResult>& trials);

struct UniversalityConfig {
  std::vector<std::size_t> dims;
  // One count for every dimension, or one per entry of dims.
  std::vector<std::size_t> n{100};
  std::uint64_t seed = 42;
  double delta = 0.99;
  std::size_t grid = 100;
  unsigned threads = 0;
};

struct UniversalityResult {
  std::vector<std::size_t> dims;
  std::vector<std::vector<double>> curves;       // mean normalized profile on the grid, per dim
  std::vector<std::vector<double>> correlation;  // Pearson, dims x dims
};

/// Mean of p / ||p||_1 over LLL-reduced uniform lattices, sampled at
/// position g (d - 1) for g on an even grid of [0, 1], then pairwise Pearson
/// correlations. Throws std::invalid_argument when any n < 2.
UniversalityResult universality(const UniversalityConfig& config);

/// Linear interpolation of `values` (at positions 0..size-1) onto `grid`
/// points spread evenly over [0, size - 1].
std::vector<double> resample_profile(const std::vector<double>& values, std::size_t grid);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Runs `count` independent jobs on up to `threads` threads (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace latmaj
