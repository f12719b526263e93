#pragma once

#include "latmaj/gso.hpp"
#include "latmaj/intmat.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latmaj {

struct ReductionParams {
  double delta = 0.99;
  std::size_t max_moves = 10'000'000;
  std::size_t refresh_every = 64;
  // Keep every event in ReductionReport::trace.
  bool record_trace = false;
  // Attach full pre/post profiles to each event (large).
  bool capture_profiles = false;
  // Deep selectors: only accept moves that also lower the LLL potential.
  // Off by default; the selectors themselves do not guarantee it.
  bool phi_guard = false;
};

/// Throws std::invalid_argument unless 1/4 < delta <= 1 and refresh_every >= 1.
void validate(const ReductionParams& params);

enum class EventKind { adjacent_swap, deep_insertion };

/// One accepted move. Positions are 0-based; k is the source row, j the
/// destination (k - 1 for adjacent swaps).
///
/// Gap fields are only set for adjacent swaps: gap_pre = p_{k-1} - p_k,
/// gap_post = |p'_{k-1} - p'_k|, epsilon = (gap_pre - gap_post) / 2.
struct TraceEvent {
  std::size_t step = 0;
  EventKind kind = EventKind::adjacent_swap;
  std::size_t k = 0;
  std::size_t j = 0;
  std::optional<double> mu_abs;
  std::optional<double> gap_pre;
  std::optional<double> gap_post;
  std::optional<double> epsilon;
  bool degenerate = false;
  double sum_sq_pre = 0;
  double sum_sq_post = 0;
  double potential_pre = 0;
  double potential_post = 0;
  double score = 0;
  std::size_t depth = 1;
  double delta_V = 0;  // sum_sq_pre - sum_sq_post
  std::size_t dim = 0;
  double log_det = 0;
  std::vector<double> profile_pre;
  std::vector<double> profile_post;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct ReductionReport {
  Basis basis;
  std::size_t N = 0;      // accepted moves
  std::size_t W = 0;      // sum of depths
  std::size_t scans = 0;  // candidate evaluations, diagnostics only
  double delta0 = 0;
  double final_sum_sq = 0;
  double log_det = 0;
  Profile final_profile;
  std::int64_t wall_ns = 0;
  bool terminal = false;
  bool phi_monotone = true;
  std::size_t phi_increases = 0;  // accepted moves that raised the potential
  // Terminal basis checked: size-reduced and no admissible move left.
  bool contract_ok = false;
  std::optional<double> alpha0;
  std::optional<double> alpha_final;  // differs from alpha0 only for scheduled alpha
  std::vector<TraceEvent> trace;
  std::size_t exact_fallbacks = 0;
};

/// exp((ln ||b_0|| - L/d) / d) with L = sum of the profile and ||b_0|| exact.
double root_hermite(const Basis& basis, const GsoState& gso);

/// True when every |mu_ij| <= 1/2 + tol.
bool is_size_reduced(const GsoState& gso, double tol = 1e-9);

std::string to_jsonl(const TraceEvent& event);
TraceEvent trace_event_from_json(const std::string& line);
void write_trace(std::ostream& out, const std::vector<TraceEvent>& events);
/// Reads one event per non-empty line. Throws std::runtime_error with the line number.
std::vector<TraceEvent> read_trace(std::istream& in);

namespace detail {

/// Fills the common terminal fields of a report from a refreshed lattice.
void finish_report(const Lattice& lattice, ReductionReport& report);

/// Snapshot of profile statistics used for trace events.
struct ProfileStats {
  Real sum_sq = 0;
  Real potential = 0;
};
ProfileStats profile_stats(const GsoState& gso);

}  // namespace detail

}  // namespace latmaj
