#pragma once

#include "latmaj/gso.hpp"
#include "latmaj/reduction.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latmaj {

struct TTransformResult {
  bool ok = false;
  double epsilon = 0;  // pre[k-1] - post[k-1]
};

/// Whether `post` arises from `pre` by moving mass eps in (0, gap) from
/// coordinate k-1 to k (k is 0-based, k >= 1). Other coordinates may differ
/// by at most `tol`, and the pair sum must be preserved within `tol`.
TTransformResult is_t_transform(const Profile& pre, const Profile& post, std::size_t k,
                                double tol = 1e-10);

/// y is majorized by x: equal totals and every descending prefix sum of y at
/// most that of x, each within tol.
bool majorizes(const Profile& x, const Profile& y, double tol = 1e-9);

/// Linear profile with slope -cdelta(delta) and total L.
Profile gsa_profile(std::size_t d, double L, double delta);

/// Every adjacent gap p_i - p_{i+1} is at least cdelta(delta) - tol.
bool gsa_feasible(const Profile& p, double delta, double tol = 1e-9);

/// For a profile with every adjacent gap at least cdelta(delta), checks
/// sum p_i^2 >= sum p*_i^2 - tol with p* the linear profile of the same total.
/// Throws std::invalid_argument on an infeasible profile.
bool min_variance_check(const Profile& p, double delta, double tol = 1e-9);

struct DissipationLedger {
  std::vector<double> V;      // V(0..N)
  std::vector<double> drops;  // 2 eps (gap - eps) per event
  std::vector<double> residuals;  // |(V(s-1) - V(s)) - drop_s|
  double L = 0;
  double pstar_sum_sq = 0;
  double telescoping_residual = 0;  // relative
  double max_drop = 0;
  double swap_bound = 0;  // (V(0) - V(N)) / max_drop
  std::size_t N = 0;
  bool bound_ok = true;
};

/// Builds the ledger of an adjacent-swap trace. Throws std::invalid_argument
/// on deep insertions and on an empty trace without dimension information
/// (an empty trace yields an all-zero ledger).
DissipationLedger ledger_from_trace(const std::vector<TraceEvent>& trace, double delta);

struct RoiCheck {
  std::size_t W = 0;
  double delta_V_total = 0;
  double max_eta = 0;
  double bound = 0;
  bool ok = true;
};

/// W >= total delta_V / (largest realized delta_V / depth).
RoiCheck roi_bound_check(const std::vector<TraceEvent>& trace);

/// Named profile functionals: "sum_sq", "variance", "potential",
/// "phi_<alpha>" for each requested alpha, and "entropy" when p / sum(p)
/// has all coordinates positive.
std::map<std::string, double> schur_scores(const Profile& p, const std::vector<double>& alphas = {});

double shannon_entropy(const Profile& p);  // of p / sum(p); NaN unless all positive

}  // namespace latmaj
