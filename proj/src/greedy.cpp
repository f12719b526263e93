#include "latmaj/deep.hpp"
#include "latmaj/lll.hpp"
#include "latmaj/major.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latmaj {

namespace {

// Moves whose descent is below this fraction of the window's own magnitude
// are rounding noise (pure rotations, moves inside a Schur-K block).
constexpr Real kDescentFloor = 1e-13L;
// A later candidate must beat the incumbent by this relative margin.
constexpr Real kTieMargin = 1e-12L;

bool is_thermal(SelectorKind kind) {
  return kind == SelectorKind::Thermal || kind == SelectorKind::ThermalAdaptive ||
         kind == SelectorKind::ThermalSched;
}

// Everything a scan needs that depends only on the current profile.
struct ScanContext {
  ScanContext(const ScoreRule& rule_in, const GsoState& gso_in, double delta_in)
      : rule(rule_in), gso(gso_in), delta(static_cast<Real>(delta_in)), d(gso_in.d) {
    p_ref = d == 0 ? 0 : *std::max_element(gso.p.begin(), gso.p.end());
    weight.assign(d, 1);
    fval.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (rule.kind == SelectorKind::Pot) weight[i] = static_cast<Real>(d - i);
      if (rule.kind == SelectorKind::FAlphaBeta) {
        weight[i] = std::pow(static_cast<Real>(d - i), static_cast<Real>(rule.beta));
      }
      fval[i] = f(gso.p[i]);
    }
    sum_sq = gso.sum_sq();
  }

  // Per-coordinate function of the log-norm for separable scores. Thermal
  // values are scaled by exp(-2 alpha p_ref) to stay finite.
  Real f(Real p) const {
    switch (rule.kind) {
      case SelectorKind::Pot:
        return p;
      case SelectorKind::Thermal:
      case SelectorKind::ThermalAdaptive:
      case SelectorKind::ThermalSched:
      case SelectorKind::FAlphaBeta:
        return std::exp(2 * static_cast<Real>(rule.alpha) * (p - p_ref));
      default:
        return p * p;
    }
  }

  const ScoreRule& rule;
  const GsoState& gso;
  Real delta;
  std::size_t d;
  Real p_ref = 0;
  Real sum_sq = 0;
  std::vector<Real> weight;
  std::vector<Real> fval;
};

Real top_k_sum(std::vector<Real>& scratch, const std::vector<Real>& p, std::size_t K) {
  scratch.assign(p.begin(), p.end());
  K = std::min(K, scratch.size());
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(K), scratch.end(),
                   std::greater<>());
  Real s = 0;
  for (std::size_t i = 0; i < K; ++i) s += scratch[i];
  return s;
}

// Visits every admissible j < k (j descending) with its candidate, updating
// the window score in O(1) per step. Only positive-descent candidates are
// reported.
template <class Visit>
std::size_t scan_source(const ScanContext& ctx, std::size_t k, Visit&& visit) {
  const GsoState& gso = ctx.gso;
  const SelectorKind kind = ctx.rule.kind;
  const bool schur = kind == SelectorKind::SchurK;
  const bool ssgg = kind == SelectorKind::SSGG;
  const bool by_variance = kind == SelectorKind::DeepVar || is_gdlll_family(kind);

  Real P = gso.r[k];
  Real pi = gso.p[k];
  Real D = 0;
  Real V = 0;
  Real M = ssgg ? gso.r[k] : ctx.weight[k] * std::fabs(ctx.fval[k]);
  Real MV = gso.p[k] * gso.p[k];
  Real MS = std::fabs(gso.p[k]);
  Real dphi = 0;  // twice the potential change

  std::vector<Real> after;
  std::vector<Real> scratch;
  Real top_before = 0;
  if (schur) {
    after.assign(gso.p.begin(), gso.p.end());
    top_before = top_k_sum(scratch, gso.p, ctx.rule.schur_K);
  }

  std::size_t scored = 0;
  for (std::size_t j = k; j-- > 0;) {
    const Real mu = gso.mu_at(k, j);
    const Real rj = gso.r[j];
    const Real pj = gso.p[j];
    const Real Pn = P + mu * mu * rj;
    const Real pin = 0.5L * std::log(Pn);
    const Real q = pj + pi - pin;  // new log-norm at j + 1
    V += pj * pj - pin * pin + pi * pi - q * q;
    MV += pj * pj;
    MS += std::fabs(pj);
    dphi += 2 * (pin - pj);
    if (ssgg) {
      D += mu * mu * rj * (rj / Pn - 1);
      M += rj;
    } else if (!by_variance && !schur) {
      D += ctx.weight[j] * (ctx.fval[j] - ctx.f(pin)) + ctx.weight[j + 1] * (ctx.f(pi) - ctx.f(q));
      M += ctx.weight[j] * std::fabs(ctx.fval[j]);
    }
    if (schur) {
      after[j] = pin;
      after[j + 1] = q;
    }

    if (Pn < ctx.delta * rj && (!ctx.rule.phi_guard || dphi < 0)) {
      ++scored;
      const std::size_t depth = k - j;
      Real rank = 0;
      bool positive = false;
      if (by_variance) {
        positive = V > kDescentFloor * MV;
        rank = kind == SelectorKind::GDLLL_CA
                   ? V / (static_cast<Real>(ctx.rule.ca_overhead) + static_cast<Real>(depth))
                   : kind == SelectorKind::DeepVar ? V : V / static_cast<Real>(depth);
      } else if (schur) {
        rank = top_before - top_k_sum(scratch, after, ctx.rule.schur_K);
        positive = rank > kDescentFloor * MS;
      } else {
        rank = D;
        positive = D > kDescentFloor * M;
      }
      if (positive) {
        Candidate c;
        c.k = k;
        c.j = j;
        c.depth = depth;
        c.delta_score = static_cast<double>(rank);
        c.delta_V = static_cast<double>(V);
        c.eta = c.delta_V / static_cast<double>(depth);
        visit(c, V);
      }
    }
    P = Pn;
    pi = pin;
  }
  return scored;
}

struct Best {
  std::optional<Candidate> cand;
  void consider(const Candidate& c) {
    if (!cand || c.delta_score > cand->delta_score + kTieMargin * std::fabs(cand->delta_score)) {
      cand = c;
    }
  }
};

std::optional<Candidate> full_scan(const ScanContext& ctx, std::size_t* scans) {
  Best best;
  for (std::size_t k = 1; k < ctx.d; ++k) {
    const std::size_t n = scan_source(ctx, k, [&](const Candidate& c, Real) { best.consider(c); });
    if (scans) *scans += n;
  }
  return best.cand;
}

// Shortlist for the GDLLL family: the ceil(d/3) sources with the largest
// local deficit, and only moves removing more than tau * sum p^2.
std::optional<Candidate> shortlist_scan(const ScanContext& ctx, double delta, std::size_t* scans) {
  const GsoState& gso = ctx.gso;
  const Real c = static_cast<Real>(cdelta(delta));
  std::vector<Real> residual;
  if (ctx.rule.kind == SelectorKind::GDLLL_RT) {
    const Profile star = gsa_profile(ctx.d, static_cast<double>(gso.sum_p()), delta);
    residual.resize(ctx.d);
    for (std::size_t i = 0; i < ctx.d; ++i) residual[i] = gso.p[i] - static_cast<Real>(star[i]);
  }
  std::vector<std::size_t> sources;
  for (std::size_t k = 1; k < ctx.d; ++k) {
    if (!residual.empty() && !(residual[k] > 0)) continue;
    sources.push_back(k);
  }
  auto deficit = [&](std::size_t k) { return (gso.p[k - 1] - gso.p[k]) - c; };
  std::stable_sort(sources.begin(), sources.end(),
                   [&](std::size_t a, std::size_t b) { return deficit(a) > deficit(b); });
  if (sources.size() > ctx.rule.shortlist_K) sources.resize(ctx.rule.shortlist_K);
  std::sort(sources.begin(), sources.end());

  const Real threshold = static_cast<Real>(ctx.rule.tau) * ctx.sum_sq;
  Best best;
  for (std::size_t k : sources) {
    const std::size_t n = scan_source(ctx, k, [&](const Candidate& cand, Real V) {
      if (V > threshold) best.consider(cand);
    });
    if (scans) *scans += n;
  }
  return best.cand;
}

}  // namespace

std::optional<Candidate> select_candidate(const ScoreRule& rule, const GsoState& gso, double delta,
                                          std::size_t* scans) {
  const ScanContext ctx(rule, gso, delta);
  if (is_gdlll_family(rule.kind) && rule.shortlist) {
    if (auto c = shortlist_scan(ctx, delta, scans)) return c;
    // The filters are heuristics; fall back so termination means "no move at all".
  }
  return full_scan(ctx, scans);
}

bool has_positive_descent_candidate(const ScoreRule& rule, const GsoState& gso, double delta) {
  const ScanContext ctx(rule, gso, delta);
  return full_scan(ctx, nullptr).has_value();
}

ReductionReport greedy_reduce(const Basis& basis, const ReductionParams& params, const SelectorSpec& spec,
                              const TraceSink& sink) {
  validate(params);
  if (spec.kind == SelectorKind::LLL) throw std::invalid_argument("greedy_reduce: use lll_reduce for LLL");
  const auto start = std::chrono::steady_clock::now();
  ReductionReport report;
  Lattice lat(basis);
  const std::size_t d = lat.dim();
  // Size reduction leaves r untouched, so the raw profile is also the reduced one.
  ScoreRule rule = make_score_rule(spec, d, lat.gso().profile());
  rule.phi_guard = params.phi_guard;
  if (is_thermal(spec.kind) || spec.kind == SelectorKind::FAlphaBeta) report.alpha0 = rule.alpha;
  lat.size_reduce_from(0);

  bool finished = false;
  for (;;) {
    std::optional<Candidate> best = select_candidate(rule, lat.gso(), params.delta, &report.scans);
    if (!best) {
      lat.refresh();
      lat.size_reduce_from(0);
      best = select_candidate(rule, lat.gso(), params.delta, &report.scans);
      if (!best) {
        finished = true;
        break;
      }
    }
    if (report.N >= params.max_moves) break;

    const GsoState& gso = lat.gso();
    TraceEvent e;
    e.step = report.N;
    e.kind = EventKind::deep_insertion;
    e.k = best->k;
    e.j = best->j;
    e.depth = best->depth;
    e.score = best->delta_score;
    e.dim = d;
    const auto pre = detail::profile_stats(gso);
    if (params.capture_profiles) e.profile_pre = gso.profile();

    lat.move_row(best->k, best->j);
    lat.size_reduce_from(best->j);
    ++report.N;
    report.W += best->depth;
    if (report.N % params.refresh_every == 0) {
      lat.refresh();
      lat.size_reduce_from(0);
    }

    const auto post = detail::profile_stats(gso);
    e.sum_sq_pre = static_cast<double>(pre.sum_sq);
    e.sum_sq_post = static_cast<double>(post.sum_sq);
    e.potential_pre = static_cast<double>(pre.potential);
    e.potential_post = static_cast<double>(post.potential);
    e.delta_V = static_cast<double>(pre.sum_sq - post.sum_sq);
    e.log_det = static_cast<double>(gso.sum_p());
    if (params.capture_profiles) e.profile_post = gso.profile();
    // A deep move changes the potential by sum_{i=j}^{k-1} ln(P_i / r_i) / 2;
    // only the i = j term is forced negative, so increases are counted, not fatal.
    if (!(post.potential < pre.potential)) {
      report.phi_monotone = false;
      ++report.phi_increases;
    }
    if (sink) sink(e);
    if (params.record_trace) report.trace.push_back(std::move(e));

    if (spec.kind == SelectorKind::ThermalSched && report.N % spec.period_P == 0) {
      rule.alpha = adaptive_alpha(lat.gso().profile(), spec.gamma, spec.alpha_min);
    }
  }

  report.terminal = finished;
  report.contract_ok = finished && is_size_reduced(lat.gso()) &&
                       !has_positive_descent_candidate(rule, lat.gso(), params.delta);
  if (report.alpha0) report.alpha_final = rule.alpha;
  detail::finish_report(lat, report);
  report.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

ReductionReport reduce(const Basis& basis, const ReductionParams& params, const SelectorSpec& spec,
                       const TraceSink& sink) {
  if (spec.kind == SelectorKind::LLL) return lll_reduce(basis, params, sink);
  return greedy_reduce(basis, params, spec, sink);
}

bool terminal_contract_holds(const Basis& basis, const SelectorSpec& spec, double delta,
                             std::optional<double> alpha, bool phi_guard) {
  const Lattice lat(basis);
  const GsoState& gso = lat.gso();
  if (!is_size_reduced(gso)) return false;
  if (spec.kind == SelectorKind::LLL) {
    for (std::size_t k = 1; k < gso.d; ++k) {
      if (lovasz_violated(gso, k, delta)) return false;
    }
    return true;
  }
  ScoreRule rule = make_score_rule(spec, gso.d, gso.profile());
  rule.phi_guard = phi_guard;
  if (alpha) rule.alpha = *alpha;
  return !has_positive_descent_candidate(rule, gso, delta);
}

}  // namespace latmaj
