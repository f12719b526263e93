#pragma once

#include "latmaj/gso.hpp"
#include "latmaj/reduction.hpp"
#include "latmaj/selector.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace latmaj {

/// Squared projection norms of row k onto the complements of rows 0..l-1:
/// P[k] = r_k and P[l] = P[l+1] + mu_{k,l}^2 r_l, so P[0] = ||b_k||^2.
struct CascadeState {
  std::size_t k = 0;
  std::vector<Real> P;  // indexed by l in [0, k]
};

CascadeState cascade(const GsoState& gso, std::size_t k);

/// Inserting row k at position j < k is admissible when P_j < delta r_j.
bool admissible(const GsoState& gso, std::size_t k, std::size_t j, double delta);

/// Squared GSO norms r'_j..r'_k after moving row k to position j:
/// r'_j = P_j and r'_i = r_{i-1} P_i / P_{i-1}.
std::vector<Real> post_insertion_profile(const GsoState& gso, const CascadeState& c, std::size_t j);

struct Candidate {
  std::size_t k = 0;
  std::size_t j = 0;
  double delta_score = 0;  // decrease of the selector's functional (its ranking key)
  double delta_V = 0;      // decrease of the sum of squared log-norms
  std::size_t depth = 0;   // k - j
  double eta = 0;          // delta_V / depth
};

/// Coefficient of variation sigma / |mean| of a log-norm profile (population
/// standard deviation). Infinite when the mean is zero.
double profile_cv(const Profile& p);

/// max(alpha_min, (2 / (1 + cv))^gamma).
double adaptive_alpha_from_cv(double cv, double gamma = 2.0, double alpha_min = 0.4);

double adaptive_alpha(const Profile& initial, double gamma = 2.0, double alpha_min = 0.4);

/// A selector with every derived constant resolved for one run.
struct ScoreRule {
  SelectorKind kind = SelectorKind::SSGG;
  double alpha = 1.0;
  double beta = 0.0;
  std::size_t shortlist_K = 1;
  double tau = 0.0;
  std::size_t schur_K = 1;
  double ca_overhead = 0.0;
  bool shortlist = true;
  // Also require the move to lower the LLL potential.
  bool phi_guard = false;
};

/// Resolves defaults: alpha from the initial profile for the adaptive kinds,
/// K = ceil(d/3) for the shortlist and ceil(d/2) for SchurK.
ScoreRule make_score_rule(const SelectorSpec& spec, std::size_t d, const Profile& initial);

/// Scores one insertion by recomputing its window directly. SSGG uses the
/// incremental form sum_{l=j}^{k-1} mu_{k,l}^2 r_l (r_l / P_l - 1).
/// Throws std::invalid_argument when (k, j) is not admissible.
Candidate score(const ScoreRule& rule, const GsoState& gso, std::size_t k, std::size_t j,
                double delta);

/// Best admissible positive-descent candidate under `rule`, or nothing.
/// Honors the GDLLL shortlist; `scans` accumulates the number of scored pairs.
std::optional<Candidate> select_candidate(const ScoreRule& rule, const GsoState& gso, double delta,
                                          std::size_t* scans = nullptr);

/// True when some admissible pair has positive descent under `rule`,
/// scanning every pair without shortlist filters.
bool has_positive_descent_candidate(const ScoreRule& rule, const GsoState& gso, double delta);

/// Greedy deep-insertion reduction: repeatedly apply the best admissible
/// insertion until none has positive descent.
ReductionReport greedy_reduce(const Basis& basis, const ReductionParams& params,
                              const SelectorSpec& spec, const TraceSink& sink = {});

/// Dispatches to lll_reduce or greedy_reduce.
ReductionReport reduce(const Basis& basis, const ReductionParams& params, const SelectorSpec& spec,
                       const TraceSink& sink = {});

/// Terminal check for a finished run: size-reduced and, for its own selector,
/// no admissible positive-descent move (no Lovász violation for LLL).
bool terminal_contract_holds(const Basis& basis, const SelectorSpec& spec, double delta,
                             std::optional<double> alpha, bool phi_guard = false);

}  // namespace latmaj
