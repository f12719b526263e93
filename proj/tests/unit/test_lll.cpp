#include "helpers.hpp"

#include "latmaj/lll.hpp"
#include "latmaj/major.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace latmaj;
using latmaj::testing::small_basis;

TEST(Cdelta, Values) {
  EXPECT_NEAR(cdelta(0.99), 0.1505525, 1e-6);
  EXPECT_NEAR(cdelta(1.0), 0.5 * std::log(4.0 / 3.0), 1e-15);
  EXPECT_THROW(cdelta(0.25), std::invalid_argument);
  EXPECT_THROW(cdelta(1.01), std::invalid_argument);
}

TEST(Lll, OutputIsReducedAndSameLattice) {
  for (Family f : {Family::uniform, Family::gaussian, Family::qary, Family::goldstein_mayer}) {
    const Basis b = small_basis(16, 7, f);
    ReductionParams params;
    const ReductionReport rep = lll_reduce(b, params);
    ASSERT_TRUE(rep.terminal);
    EXPECT_TRUE(rep.contract_ok);
    EXPECT_EQ(gram_determinant(rep.basis), gram_determinant(b));
    const GsoState g = compute_gso(rep.basis);
    EXPECT_TRUE(is_size_reduced(g));
    for (std::size_t k = 1; k < g.d; ++k) {
      // Small slack: the reducer decides on its own floating data.
      EXPECT_FALSE(lovasz_violated(g, k, params.delta - 1e-9)) << family_name(f) << " k=" << k;
    }
    EXPECT_EQ(rep.N, rep.W);
    EXPECT_NEAR(rep.log_det, log_det(b), 1e-8);
  }
}

TEST(Lll, SwapEventsAreTTransforms) {
  ReductionParams params;
  params.record_trace = true;
  params.capture_profiles = true;
  const ReductionReport rep = lll_reduce(small_basis(20, 3), params);
  ASSERT_FALSE(rep.trace.empty());
  for (const auto& e : rep.trace) {
    ASSERT_EQ(e.kind, EventKind::adjacent_swap);
    EXPECT_EQ(e.j + 1, e.k);
    EXPECT_LT(e.potential_post, e.potential_pre);
    if (e.degenerate) continue;
    const TTransformResult t = is_t_transform(e.profile_pre, e.profile_post, e.k);
    EXPECT_TRUE(t.ok) << "step " << e.step;
    // The recorded epsilon is the smaller of the two readings of the move
    // when the pair changes order.
    EXPECT_NEAR(std::min(t.epsilon, *e.gap_pre - t.epsilon), *e.epsilon, 1e-9);
    EXPECT_TRUE(majorizes(e.profile_pre, e.profile_post));
    EXPECT_LT(e.sum_sq_post, e.sum_sq_pre);
    // Drop of sum p^2 is 2 eps (gap - eps).
    EXPECT_NEAR(e.delta_V, 2 * *e.epsilon * (*e.gap_pre - *e.epsilon), 1e-9);
  }
}

TEST(Lll, MoveCapLeavesRunNonTerminal) {
  ReductionParams params;
  params.max_moves = 3;
  const ReductionReport rep = lll_reduce(small_basis(20, 3, Family::qary), params);
  EXPECT_FALSE(rep.terminal);
  EXPECT_EQ(rep.N, 3u);
}

TEST(Lll, SinkSeesEveryEvent) {
  std::size_t seen = 0;
  std::size_t last = 0;
  const ReductionReport rep = lll_reduce(small_basis(14, 2), ReductionParams{}, [&](const TraceEvent& e) {
    last = e.step;
    ++seen;
  });
  EXPECT_EQ(seen, rep.N);
  if (seen > 0) EXPECT_EQ(last + 1, seen);
}

TEST(Lll, RejectsBadParams) {
  ReductionParams p;
  p.delta = 0.25;
  EXPECT_THROW(lll_reduce(small_basis(4, 1), p), std::invalid_argument);
  p.delta = 0.99;
  p.refresh_every = 0;
  EXPECT_THROW(lll_reduce(small_basis(4, 1), p), std::invalid_argument);
}
