#include "latmaj/lll.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace latmaj {

double cdelta(double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) throw std::invalid_argument("cdelta: delta must lie in (1/4, 1]");
  return 0.5 * std::log(1.0 / (delta - 0.25));
}

bool lovasz_violated(const GsoState& gso, std::size_t k, double delta) {
  const Real mu = gso.mu_at(k, k - 1);
  return gso.r[k] < (static_cast<Real>(delta) - mu * mu) * gso.r[k - 1];
}

TraceEvent lovasz_swap(Lattice& lattice, std::size_t k) {
  const GsoState& gso = lattice.gso();
  TraceEvent e;
  e.kind = EventKind::adjacent_swap;
  e.k = k;
  e.j = k - 1;
  e.depth = 1;
  e.dim = gso.d;
  const Real mu = gso.mu_at(k, k - 1);
  const Real gap = gso.p[k - 1] - gso.p[k];
  const auto pre = detail::profile_stats(gso);
  e.profile_pre = gso.profile();

  lattice.swap_adjacent(k);

  const auto post = detail::profile_stats(gso);
  const Real gap_after = std::fabs(gso.p[k - 1] - gso.p[k]);
  const Real eps = 0.5L * (gap - gap_after);
  e.mu_abs = static_cast<double>(std::fabs(mu));
  e.gap_pre = static_cast<double>(gap);
  e.gap_post = static_cast<double>(gap_after);
  e.epsilon = static_cast<double>(eps);
  e.degenerate = mu == 0 || !(eps > 0);
  e.sum_sq_pre = static_cast<double>(pre.sum_sq);
  e.sum_sq_post = static_cast<double>(post.sum_sq);
  e.potential_pre = static_cast<double>(pre.potential);
  e.potential_post = static_cast<double>(post.potential);
  e.delta_V = static_cast<double>(pre.sum_sq - post.sum_sq);
  e.log_det = static_cast<double>(gso.sum_p());
  e.profile_post = gso.profile();
  return e;
}

namespace {

// One classical sweep; returns false when the move cap was hit.
bool lll_sweep(Lattice& lat, const ReductionParams& params, ReductionReport& report,
               const TraceSink& sink) {
  const std::size_t d = lat.dim();
  std::size_t k = 1;
  while (k < d) {
    lat.size_reduce(k);
    ++report.scans;
    if (!lovasz_violated(lat.gso(), k, params.delta)) {
      ++k;
      continue;
    }
    if (report.N >= params.max_moves) return false;
    TraceEvent e = lovasz_swap(lat, k);
    if (!params.capture_profiles) {
      e.profile_pre.clear();
      e.profile_post.clear();
    }
    e.step = report.N;
    ++report.N;
    ++report.W;
    if (!(e.potential_post < e.potential_pre)) {
      report.phi_monotone = false;
      throw NumericalError("potential did not decrease at swap " + std::to_string(e.step));
    }
    if (sink) sink(e);
    if (params.record_trace) report.trace.push_back(std::move(e));
    if (report.N % params.refresh_every == 0) lat.refresh();
    k = k > 1 ? k - 1 : 1;
  }
  return true;
}

bool lll_terminal(const GsoState& gso, double delta) {
  if (!is_size_reduced(gso)) return false;
  for (std::size_t k = 1; k < gso.d; ++k) {
    if (lovasz_violated(gso, k, delta)) return false;
  }
  return true;
}

}  // namespace

ReductionReport lll_reduce(const Basis& basis, const ReductionParams& params, const TraceSink& sink) {
  validate(params);
  const auto start = std::chrono::steady_clock::now();
  ReductionReport report;
  Lattice lat(basis);
  bool finished = false;
  for (;;) {
    finished = lll_sweep(lat, params, report, sink);
    lat.refresh();
    // Recomputed data can expose a borderline pair the incremental data missed.
    if (!finished || lll_terminal(lat.gso(), params.delta)) break;
  }
  report.terminal = finished;
  report.contract_ok = finished && lll_terminal(lat.gso(), params.delta);
  detail::finish_report(lat, report);
  report.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace latmaj
