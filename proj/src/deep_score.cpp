#include "latmaj/deep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace latmaj {

CascadeState cascade(const GsoState& gso, std::size_t k) {
  if (k >= gso.d) throw std::out_of_range("cascade: k out of range");
  CascadeState c;
  c.k = k;
  c.P.assign(k + 1, 0);
  c.P[k] = gso.r[k];
  for (std::size_t l = k; l-- > 0;) {
    const Real mu = gso.mu_at(k, l);
    c.P[l] = c.P[l + 1] + mu * mu * gso.r[l];
  }
  return c;
}

bool admissible(const GsoState& gso, std::size_t k, std::size_t j, double delta) {
  if (j >= k) throw std::invalid_argument("admissible: requires j < k");
  const CascadeState c = cascade(gso, k);
  return c.P[j] < static_cast<Real>(delta) * gso.r[j];
}

std::vector<Real> post_insertion_profile(const GsoState& gso, const CascadeState& c, std::size_t j) {
  if (j >= c.k) throw std::invalid_argument("post_insertion_profile: requires j < k");
  std::vector<Real> out(c.k - j + 1);
  out[0] = c.P[j];
  for (std::size_t i = j + 1; i <= c.k; ++i) out[i - j] = gso.r[i - 1] * c.P[i] / c.P[i - 1];
  return out;
}

double profile_cv(const Profile& p) {
  if (p.empty()) throw std::invalid_argument("profile_cv: empty profile");
  long double mean = 0;
  for (double v : p) mean += v;
  mean /= static_cast<long double>(p.size());
  long double var = 0;
  for (double v : p) var += (v - mean) * (v - mean);
  var /= static_cast<long double>(p.size());
  if (mean == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(std::sqrt(var) / std::fabs(mean));
}

double adaptive_alpha_from_cv(double cv, double gamma, double alpha_min) {
  if (!(cv >= 0)) throw std::invalid_argument("adaptive_alpha: cv must be non-negative");
  if (std::isinf(cv)) return alpha_min;
  return std::max(alpha_min, std::pow(2.0 / (1.0 + cv), gamma));
}

double adaptive_alpha(const Profile& initial, double gamma, double alpha_min) {
  return adaptive_alpha_from_cv(profile_cv(initial), gamma, alpha_min);
}

ScoreRule make_score_rule(const SelectorSpec& spec, std::size_t d, const Profile& initial) {
  validate(spec);
  if (spec.kind == SelectorKind::LLL) throw std::invalid_argument("LLL has no deep-insertion score");
  ScoreRule rule;
  rule.kind = spec.kind;
  rule.beta = spec.beta;
  rule.tau = spec.tau;
  rule.ca_overhead = spec.ca_overhead;
  rule.shortlist = spec.shortlist;
  rule.shortlist_K = spec.shortlist_K.value_or((d + 2) / 3);
  rule.schur_K = spec.schur_K.value_or((d + 1) / 2);
  switch (spec.kind) {
    case SelectorKind::ThermalAdaptive:
    case SelectorKind::ThermalSched:
      rule.alpha = adaptive_alpha(initial, spec.gamma, spec.alpha_min);
      break;
    case SelectorKind::FAlphaBeta:
      rule.alpha = spec.alpha ? *spec.alpha : adaptive_alpha(initial, spec.gamma, spec.alpha_min);
      break;
    default:
      rule.alpha = spec.alpha.value_or(1.0);
  }
  return rule;
}

namespace {

Real top_k_sum(std::vector<Real> p, std::size_t K) {
  K = std::min(K, p.size());
  std::nth_element(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(K), p.end(), std::greater<>());
  Real s = 0;
  for (std::size_t i = 0; i < K; ++i) s += p[i];
  return s;
}

}  // namespace

Candidate score(const ScoreRule& rule, const GsoState& gso, std::size_t k, std::size_t j, double delta) {
  if (j >= k || k >= gso.d) throw std::invalid_argument("score: requires j < k < d");
  const CascadeState c = cascade(gso, k);
  if (!(c.P[j] < static_cast<Real>(delta) * gso.r[j])) {
    throw std::invalid_argument("score: pair is not admissible");
  }
  const std::vector<Real> rp = post_insertion_profile(gso, c, j);
  const std::size_t d = gso.d;
  Candidate out;
  out.k = k;
  out.j = j;
  out.depth = k - j;

  Real dv = 0;
  for (std::size_t i = j; i <= k; ++i) {
    const Real q = 0.5L * std::log(rp[i - j]);
    dv += gso.p[i] * gso.p[i] - q * q;
  }
  out.delta_V = static_cast<double>(dv);
  out.eta = out.delta_V / static_cast<double>(out.depth);

  const Real alpha = rule.alpha;
  auto weight = [&](std::size_t i, Real beta) { return std::pow(static_cast<Real>(d - i), beta); };
  Real ds = 0;
  switch (rule.kind) {
    case SelectorKind::DeepVar:
      ds = dv;
      break;
    case SelectorKind::Thermal:
    case SelectorKind::ThermalAdaptive:
    case SelectorKind::ThermalSched:
      for (std::size_t i = j; i <= k; ++i) ds += std::pow(gso.r[i], alpha) - std::pow(rp[i - j], alpha);
      break;
    case SelectorKind::SSGG:
      for (std::size_t l = j; l < k; ++l) {
        const Real mu = gso.mu_at(k, l);
        ds += mu * mu * gso.r[l] * (gso.r[l] / c.P[l] - 1);
      }
      break;
    case SelectorKind::GDLLL:
    case SelectorKind::GDLLL_RT:
      ds = dv / static_cast<Real>(out.depth);
      break;
    case SelectorKind::GDLLL_CA:
      ds = dv / (static_cast<Real>(rule.ca_overhead) + static_cast<Real>(out.depth));
      break;
    case SelectorKind::SchurK: {
      std::vector<Real> after(gso.p.begin(), gso.p.end());
      for (std::size_t i = j; i <= k; ++i) after[i] = 0.5L * std::log(rp[i - j]);
      ds = top_k_sum(gso.p, rule.schur_K) - top_k_sum(after, rule.schur_K);
      break;
    }
    case SelectorKind::FAlphaBeta:
      for (std::size_t i = j; i <= k; ++i) {
        ds += weight(i, rule.beta) * (std::pow(gso.r[i], alpha) - std::pow(rp[i - j], alpha));
      }
      break;
    case SelectorKind::Pot:
      for (std::size_t i = j; i <= k; ++i) {
        ds += static_cast<Real>(d - i) * (gso.p[i] - 0.5L * std::log(rp[i - j]));
      }
      break;
    case SelectorKind::LLL:
      throw std::invalid_argument("score: LLL has no deep-insertion score");
  }
  out.delta_score = static_cast<double>(ds);
  return out;
}

}  // namespace latmaj
