#include "latmaj/major.hpp"

#include "latmaj/lll.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latmaj {

namespace {

void require_same_length(const Profile& a, const Profile& b, const char* who) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": profile lengths differ");
}

double sum_of(const Profile& p) {
  long double s = 0;
  for (double v : p) s += v;
  return static_cast<double>(s);
}

double sum_sq_of(const Profile& p) {
  long double s = 0;
  for (double v : p) s += static_cast<long double>(v) * v;
  return static_cast<double>(s);
}

}  // namespace

TTransformResult is_t_transform(const Profile& pre, const Profile& post, std::size_t k, double tol) {
  require_same_length(pre, post, "is_t_transform");
  if (k == 0 || k >= pre.size()) throw std::out_of_range("is_t_transform: k out of range");
  TTransformResult out;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (i + 1 == k || i == k) continue;
    if (std::fabs(pre[i] - post[i]) > tol) return out;
  }
  const double gap = pre[k - 1] - pre[k];
  const double eps = pre[k - 1] - post[k - 1];
  out.epsilon = eps;
  if (std::fabs((pre[k - 1] + pre[k]) - (post[k - 1] + post[k])) > tol) return out;
  out.ok = gap > 0 && eps > 0 && eps < gap;
  return out;
}

bool majorizes(const Profile& x, const Profile& y, double tol) {
  require_same_length(x, y, "majorizes");
  Profile xs = x;
  Profile ys = y;
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  long double px = 0;
  long double py = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    px += xs[i];
    py += ys[i];
    if (py > px + tol) return false;
  }
  return std::fabs(static_cast<double>(px - py)) <= tol;
}

Profile gsa_profile(std::size_t d, double L, double delta) {
  if (d == 0) throw std::invalid_argument("gsa_profile: d must be positive");
  const double c = cdelta(delta);
  Profile p(d);
  const double mean = L / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = mean + c * (static_cast<double>(d) - 1.0 - 2.0 * static_cast<double>(i)) / 2.0;
  }
  return p;
}

bool gsa_feasible(const Profile& p, double delta, double tol) {
  const double c = cdelta(delta);
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i - 1] - p[i] < c - tol) return false;
  }
  return true;
}

bool min_variance_check(const Profile& p, double delta, double tol) {
  if (p.empty()) throw std::invalid_argument("min_variance_check: empty profile");
  if (!gsa_feasible(p, delta, tol)) throw std::invalid_argument("min_variance_check: infeasible profile");
  const Profile star = gsa_profile(p.size(), sum_of(p), delta);
  return sum_sq_of(p) >= sum_sq_of(star) - tol;
}

DissipationLedger ledger_from_trace(const std::vector<TraceEvent>& trace, double delta) {
  DissipationLedger out;
  if (trace.empty()) {
    out.V = {0.0};
    return out;
  }
  for (const auto& e : trace) {
    if (e.kind != EventKind::adjacent_swap || !e.gap_pre || !e.epsilon) {
      throw std::invalid_argument("ledger_from_trace: only adjacent swaps carry the dissipation identity");
    }
  }
  const TraceEvent& first = trace.front();
  out.L = first.log_det;
  out.pstar_sum_sq = sum_sq_of(gsa_profile(first.dim, out.L, delta));
  out.N = trace.size();
  out.V.reserve(trace.size() + 1);
  out.V.push_back(first.sum_sq_pre - out.pstar_sum_sq);
  long double total_drop = 0;
  for (const auto& e : trace) {
    const double eps = *e.epsilon;
    const double drop = 2.0 * eps * (*e.gap_pre - eps);
    out.drops.push_back(drop);
    out.residuals.push_back(std::fabs((e.sum_sq_pre - e.sum_sq_post) - drop));
    out.V.push_back(e.sum_sq_post - out.pstar_sum_sq);
    out.max_drop = std::max(out.max_drop, drop);
    total_drop += drop;
  }
  const double dv = out.V.front() - out.V.back();
  const double scale = std::max(std::fabs(dv), std::numeric_limits<double>::min());
  out.telescoping_residual = std::fabs(dv - static_cast<double>(total_drop)) / scale;
  out.swap_bound = out.max_drop > 0 ? dv / out.max_drop : 0.0;
  out.bound_ok = static_cast<double>(out.N) >= out.swap_bound * (1.0 - 1e-9);
  return out;
}

RoiCheck roi_bound_check(const std::vector<TraceEvent>& trace) {
  RoiCheck out;
  long double total = 0;
  for (const auto& e : trace) {
    if (e.depth == 0) throw std::invalid_argument("roi_bound_check: zero depth");
    out.W += e.depth;
    total += e.delta_V;
    out.max_eta = std::max(out.max_eta, e.delta_V / static_cast<double>(e.depth));
  }
  out.delta_V_total = static_cast<double>(total);
  if (trace.empty() || out.max_eta <= 0) return out;
  out.bound = out.delta_V_total / out.max_eta;
  out.ok = static_cast<double>(out.W) >= out.bound * (1.0 - 1e-12);
  return out;
}

double shannon_entropy(const Profile& p) {
  const double total = sum_of(p);
  if (!(total > 0)) return std::numeric_limits<double>::quiet_NaN();
  double h = 0;
  for (double v : p) {
    if (!(v > 0)) return std::numeric_limits<double>::quiet_NaN();
    const double w = v / total;
    h -= w * std::log(w);
  }
  return h;
}

std::map<std::string, double> schur_scores(const Profile& p, const std::vector<double>& alphas) {
  std::map<std::string, double> out;
  const auto d = static_cast<double>(p.size());
  const double ss = sum_sq_of(p);
  out["sum_sq"] = ss;
  if (!p.empty()) {
    const double mean = sum_of(p) / d;
    out["variance"] = ss / d - mean * mean;
  } else {
    out["variance"] = 0;
  }
  long double phi = 0;
  for (std::size_t i = 0; i < p.size(); ++i) phi += static_cast<long double>(p.size() - i) * p[i];
  out["potential"] = static_cast<double>(phi);
  for (double a : alphas) {
    long double s = 0;
    for (double v : p) s += std::exp(2.0L * a * v);
    std::ostringstream key;
    key << "phi_" << a;
    out[key.str()] = static_cast<double>(s);
  }
  const double h = shannon_entropy(p);
  if (!std::isnan(h)) out["entropy"] = h;
  return out;
}

}  // namespace latmaj
