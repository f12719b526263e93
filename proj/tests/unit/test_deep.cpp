#include "helpers.hpp"

#include "latmaj/deep.hpp"
#include "latmaj/lll.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace latmaj;
using latmaj::testing::rel_err;
using latmaj::testing::small_basis;

namespace {

// A size-reduced lattice with some admissible deep insertions left.
Lattice prepared(std::size_t d, std::uint64_t seed, Family f) {
  Lattice lat(small_basis(d, seed, f));
  lat.size_reduce_from(1);
  return lat;
}

std::vector<std::pair<std::size_t, std::size_t>> admissible_pairs(const GsoState& g, double delta) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k = 1; k < g.d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (admissible(g, k, j, delta)) out.emplace_back(k, j);
    }
  }
  return out;
}

GsoState after_move(const Basis& b, std::size_t k, std::size_t j) {
  Basis moved = b;
  moved.move_row(k, j);
  return compute_gso(moved);
}

const std::vector<SelectorSpec> kDeepSelectors = {
    parse_selector("ssgg"),          parse_selector("deepvar"),   parse_selector("thermal:alpha=1.5"),
    parse_selector("thermal-adaptive"), parse_selector("gdlll"),  parse_selector("gdlll-rt"),
    parse_selector("gdlll-ca"),      parse_selector("schurk"),    parse_selector("falphabeta"),
    parse_selector("pot"),           parse_selector("thermal-sched:P=5"),
};

}  // namespace

TEST(Cascade, EndsAtSquaredRowNorm) {
  Lattice lat = prepared(10, 3, Family::gaussian);
  for (std::size_t k : {1, 5, 9}) {
    const CascadeState c = cascade(lat.gso(), k);
    EXPECT_LT(rel_err(static_cast<double>(c.P[0]), lat.gram(k, k).get_d()), 1e-12);
    EXPECT_EQ(c.P[k], lat.gso().r[k]);
  }
}

TEST(Cascade, PostInsertionProfileMatchesRecompute) {
  Lattice lat = prepared(12, 5, Family::qary);
  const GsoState& g = lat.gso();
  for (std::size_t k = 1; k < 12; k += 3) {
    for (std::size_t j = 0; j < k; j += 2) {
      const std::vector<Real> rp = post_insertion_profile(g, cascade(g, k), j);
      const GsoState want = after_move(lat.basis(), k, j);
      for (std::size_t i = j; i <= k; ++i) {
        EXPECT_LT(rel_err(static_cast<double>(rp[i - j]), static_cast<double>(want.r[i])), 1e-11);
      }
    }
  }
}

TEST(Score, SsggIncrementalEqualsDirectWindow) {
  for (Family f : {Family::uniform, Family::qary, Family::gaussian}) {
    Lattice lat = prepared(16, 11, f);
    const GsoState& g = lat.gso();
    const ScoreRule ssgg = make_score_rule(parse_selector("ssgg"), g.d, g.profile());
    const ScoreRule thermal1 = make_score_rule(parse_selector("thermal:alpha=1"), g.d, g.profile());
    for (auto [k, j] : admissible_pairs(g, 0.99)) {
      const GsoState post = after_move(lat.basis(), k, j);
      Real direct = 0;
      for (std::size_t i = j; i <= k; ++i) direct += g.r[i] - post.r[i];
      const double inc = score(ssgg, g, k, j, 0.99).delta_score;
      EXPECT_LT(rel_err(inc, static_cast<double>(direct)), 1e-9) << k << "," << j;
      EXPECT_LT(rel_err(score(thermal1, g, k, j, 0.99).delta_score, inc), 1e-9);
    }
  }
}

TEST(Score, DeltaVMatchesRecompute) {
  Lattice lat = prepared(14, 9, Family::gaussian);
  const GsoState& g = lat.gso();
  const ScoreRule rule = make_score_rule(parse_selector("deepvar"), g.d, g.profile());
  for (auto [k, j] : admissible_pairs(g, 0.99)) {
    const double want = static_cast<double>(g.sum_sq() - after_move(lat.basis(), k, j).sum_sq());
    EXPECT_NEAR(score(rule, g, k, j, 0.99).delta_V, want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(Score, RejectsInadmissiblePairs) {
  Lattice lat(small_basis(8, 1));
  lat.size_reduce_from(1);
  const ScoreRule rule = make_score_rule(parse_selector("ssgg"), 8, lat.gso().profile());
  EXPECT_THROW(score(rule, lat.gso(), 2, 3, 0.99), std::invalid_argument);
}

TEST(Select, PicksTheBestAdmissiblePair) {
  for (const auto& base : kDeepSelectors) {
    SelectorSpec spec = base;
    spec.shortlist = false;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Lattice lat = prepared(14, seed, Family::qary);
      const GsoState& g = lat.gso();
      const ScoreRule rule = make_score_rule(spec, g.d, g.profile());
      const auto best = select_candidate(rule, g, 0.99);
      double top = 0;
      for (auto [k, j] : admissible_pairs(g, 0.99)) top = std::max(top, score(rule, g, k, j, 0.99).delta_score);
      ASSERT_TRUE(best.has_value()) << to_string(spec);
      EXPECT_TRUE(admissible(g, best->k, best->j, 0.99));
      const double got = score(rule, g, best->k, best->j, 0.99).delta_score;
      EXPECT_LT(rel_err(got, top), 1e-9) << to_string(spec) << " seed " << seed;
    }
  }
}

TEST(AdaptiveAlpha, Formula) {
  EXPECT_EQ(adaptive_alpha_from_cv(1.0), 1.0);
  EXPECT_NEAR(adaptive_alpha_from_cv(0.17), 2.92, 0.01);
  EXPECT_EQ(adaptive_alpha_from_cv(10.0), 0.4);
  EXPECT_NEAR(profile_cv({1.0, 3.0}), 0.5, 1e-15);
}

TEST(AdaptiveAlpha, QaryProfileHasUnitCv) {
  // q e_i rows then unit rows: p is ln q on half the rows and 0 on the rest.
  const Basis b = small_basis(40, 42, Family::qary);
  EXPECT_NEAR(profile_cv(compute_gso(b).profile()), 1.0, 1e-12);
}

TEST(Greedy, EverySelectorReachesItsTerminalContract) {
  for (const auto& spec : kDeepSelectors) {
    for (Family f : {Family::uniform, Family::qary}) {
      const Basis b = small_basis(18, 4, f);
      ReductionParams params;
      params.record_trace = true;
      const ReductionReport rep = reduce(b, params, spec);
      ASSERT_TRUE(rep.terminal) << to_string(spec);
      EXPECT_TRUE(rep.contract_ok) << to_string(spec);
      EXPECT_TRUE(terminal_contract_holds(rep.basis, spec, params.delta, rep.alpha_final));
      EXPECT_EQ(gram_determinant(rep.basis), gram_determinant(b));
      EXPECT_EQ(rep.trace.size(), rep.N);
      std::size_t w = 0;
      for (const auto& e : rep.trace) {
        w += e.depth;
        EXPECT_GT(e.score, 0.0);
        EXPECT_EQ(e.depth, e.k - e.j);
      }
      EXPECT_EQ(w, rep.W);
    }
  }
}

TEST(Greedy, DeepInsertionCanRaiseThePotential) {
  // Known case: the 138th SSGG move on this lattice is admissible with
  // positive descent but raises the LLL potential.
  GeneratorSpec gen;
  gen.family = Family::qary;
  gen.d = 40;
  gen.seed = 43;
  const Basis b = generate(gen);
  const ReductionReport free_run = reduce(b, ReductionParams{}, parse_selector("ssgg"));
  EXPECT_TRUE(free_run.terminal);
  EXPECT_FALSE(free_run.phi_monotone);
  EXPECT_GT(free_run.phi_increases, 0u);

  ReductionParams guarded;
  guarded.phi_guard = true;
  const ReductionReport g = reduce(b, guarded, parse_selector("ssgg"));
  EXPECT_TRUE(g.terminal);
  EXPECT_TRUE(g.phi_monotone);
  EXPECT_TRUE(g.contract_ok);
}

TEST(Greedy, MoveCap) {
  ReductionParams params;
  params.max_moves = 2;
  const ReductionReport rep = reduce(small_basis(20, 1, Family::qary), params, parse_selector("deepvar"));
  EXPECT_FALSE(rep.terminal);
  EXPECT_EQ(rep.N, 2u);
}

TEST(Greedy, LllDispatch) {
  const Basis b = small_basis(12, 3);
  const ReductionReport a = reduce(b, ReductionParams{}, parse_selector("lll"));
  const ReductionReport c = lll_reduce(b, ReductionParams{});
  EXPECT_EQ(a.basis, c.basis);
  EXPECT_EQ(a.N, c.N);
}
