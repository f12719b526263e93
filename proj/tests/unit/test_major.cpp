#include "helpers.hpp"

#include "latmaj/lll.hpp"
#include "latmaj/major.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace latmaj;

TEST(TTransform, AcceptsMassMovedDownhill) {
  const Profile pre = {3.0, 2.0, 0.5, 0.1};
  const Profile post = {3.0, 1.2, 1.3, 0.1};
  const TTransformResult t = is_t_transform(pre, post, 2);
  EXPECT_TRUE(t.ok);
  EXPECT_NEAR(t.epsilon, 0.8, 1e-15);
}

TEST(TTransform, RejectsOtherMoves) {
  const Profile pre = {3.0, 2.0, 0.5, 0.1};
  EXPECT_FALSE(is_t_transform(pre, {3.0, 0.4, 2.1, 0.1}, 2).ok);  // eps beyond the gap
  EXPECT_FALSE(is_t_transform(pre, {3.0, 2.1, 0.4, 0.1}, 2).ok);  // mass moved uphill
  EXPECT_FALSE(is_t_transform(pre, {3.0, 1.2, 1.3, 0.2}, 2).ok);  // other coordinate changed
  EXPECT_FALSE(is_t_transform(pre, {3.0, 1.2, 1.4, 0.1}, 2).ok);  // sum not kept
  EXPECT_THROW(is_t_transform(pre, pre, 0), std::out_of_range);
}

TEST(Majorization, Basics) {
  EXPECT_TRUE(majorizes({4, 0, 0}, {2, 1, 1}));
  EXPECT_FALSE(majorizes({2, 1, 1}, {4, 0, 0}));
  EXPECT_FALSE(majorizes({2, 1, 1}, {2, 1, 2}));  // totals differ
  EXPECT_TRUE(majorizes({1, 2, 3}, {3, 2, 1}));   // order does not matter
}

TEST(Gsa, ProfileShape) {
  const Profile p = gsa_profile(20, 7.0, 0.99);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 7.0, 1e-12);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_NEAR(p[i - 1] - p[i], cdelta(0.99), 1e-12);
  EXPECT_TRUE(gsa_feasible(p, 0.99));
  EXPECT_TRUE(min_variance_check(p, 0.99));
}

TEST(Gsa, FeasibleProfilesHaveAtLeastTheLinearVariance) {
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> extra(2.0);
  const double c = cdelta(0.99);
  for (int t = 0; t < 500; ++t) {
    Profile p(12);
    p[0] = 5.0;
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = p[i - 1] - c - extra(rng);
    EXPECT_TRUE(min_variance_check(p, 0.99));
  }
  EXPECT_THROW(min_variance_check({1.0, 1.0}, 0.99), std::invalid_argument);
}

TEST(Ledger, LllTraceSatisfiesDissipationIdentity) {
  ReductionParams params;
  params.record_trace = true;
  const ReductionReport rep = lll_reduce(latmaj::testing::small_basis(24, 17), params);
  const DissipationLedger led = ledger_from_trace(rep.trace, params.delta);
  ASSERT_EQ(led.N, rep.N);
  ASSERT_EQ(led.V.size(), rep.N + 1);
  for (double r : led.residuals) EXPECT_LT(r, 1e-8);
  EXPECT_LT(led.telescoping_residual, 1e-6);
  EXPECT_TRUE(led.bound_ok);
  EXPECT_GE(static_cast<double>(led.N), led.swap_bound);
  // The linear profile is the variance floor among feasible profiles, but a
  // terminal LLL profile is only feasible up to the mu^2 slack; V(N) is not
  // asserted non-negative.
}

TEST(Ledger, RejectsDeepEvents) {
  TraceEvent e;
  e.kind = EventKind::deep_insertion;
  EXPECT_THROW(ledger_from_trace({e}, 0.99), std::invalid_argument);
  EXPECT_EQ(ledger_from_trace({}, 0.99).N, 0u);
}

TEST(Roi, BoundFromLargestYield) {
  std::vector<TraceEvent> trace(3);
  trace[0].depth = 2;
  trace[0].delta_V = 4;  // eta 2
  trace[1].depth = 1;
  trace[1].delta_V = 1;
  trace[2].depth = 5;
  trace[2].delta_V = 5;
  const RoiCheck roi = roi_bound_check(trace);
  EXPECT_EQ(roi.W, 8u);
  EXPECT_DOUBLE_EQ(roi.max_eta, 2.0);
  EXPECT_DOUBLE_EQ(roi.bound, 5.0);
  EXPECT_TRUE(roi.ok);
}

TEST(SchurScores, Values) {
  const auto s = schur_scores({2.0, 1.0, 1.0}, {0.5});
  EXPECT_DOUBLE_EQ(s.at("sum_sq"), 6.0);
  EXPECT_NEAR(s.at("variance"), 2.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.at("potential"), 3 * 2.0 + 2 * 1.0 + 1.0);
  EXPECT_NEAR(s.at("phi_0.5"), std::exp(2.0) + 2 * std::exp(1.0), 1e-12);
  EXPECT_NEAR(s.at("entropy"), -(0.5 * std::log(0.5) + 2 * 0.25 * std::log(0.25)), 1e-12);
  EXPECT_EQ(schur_scores({1.0, -1.0}).count("entropy"), 0u);
}

TEST(SchurScores, SchurConvexOnesDropUnderTTransform) {
  const Profile pre = {3.0, 2.0, 0.5, 0.1};
  const Profile post = {3.0, 1.2, 1.3, 0.1};
  const auto a = schur_scores(pre, {0.7, 2.0});
  const auto b = schur_scores(post, {0.7, 2.0});
  for (const char* key : {"sum_sq", "variance", "phi_0.7", "phi_2"}) EXPECT_LT(b.at(key), a.at(key)) << key;
  EXPECT_GT(b.at("entropy"), a.at("entropy"));
}
