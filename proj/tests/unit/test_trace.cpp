#include "helpers.hpp"

#include "latmaj/deep.hpp"
#include "latmaj/lll.hpp"
#include "latmaj/reduction.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace latmaj;

namespace {

void expect_same(const TraceEvent& a, const TraceEvent& b) {
  EXPECT_EQ(a.step, b.step);
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.j, b.j);
  EXPECT_EQ(a.mu_abs, b.mu_abs);
  EXPECT_EQ(a.gap_pre, b.gap_pre);
  EXPECT_EQ(a.gap_post, b.gap_post);
  EXPECT_EQ(a.epsilon, b.epsilon);
  EXPECT_EQ(a.degenerate, b.degenerate);
  EXPECT_EQ(a.sum_sq_pre, b.sum_sq_pre);
  EXPECT_EQ(a.sum_sq_post, b.sum_sq_post);
  EXPECT_EQ(a.potential_pre, b.potential_pre);
  EXPECT_EQ(a.potential_post, b.potential_post);
  EXPECT_EQ(a.score, b.score);
  EXPECT_EQ(a.depth, b.depth);
  EXPECT_EQ(a.delta_V, b.delta_V);
  EXPECT_EQ(a.dim, b.dim);
  EXPECT_EQ(a.log_det, b.log_det);
  EXPECT_EQ(a.profile_pre, b.profile_pre);
  EXPECT_EQ(a.profile_post, b.profile_post);
}

}  // namespace

TEST(Trace, RoundTripsBothKinds) {
  ReductionParams params;
  params.record_trace = true;
  params.capture_profiles = true;
  const auto lll = lll_reduce(latmaj::testing::small_basis(12, 2), params);
  const auto deep = reduce(latmaj::testing::small_basis(12, 2, Family::qary), params, parse_selector("ssgg"));
  for (const auto* rep : {&lll, &deep}) {
    ASSERT_FALSE(rep->trace.empty());
    std::stringstream buf;
    write_trace(buf, rep->trace);
    const auto back = read_trace(buf);
    ASSERT_EQ(back.size(), rep->trace.size());
    for (std::size_t i = 0; i < back.size(); ++i) expect_same(back[i], rep->trace[i]);
  }
}

TEST(Trace, SchemaFields) {
  ReductionParams params;
  params.record_trace = true;
  const auto rep = reduce(latmaj::testing::small_basis(12, 2, Family::qary), params, parse_selector("deepvar"));
  ASSERT_FALSE(rep.trace.empty());
  const auto obj = nlohmann::json::parse(to_jsonl(rep.trace.front()));
  EXPECT_EQ(obj.at("kind"), "deep-insertion");
  EXPECT_TRUE(obj.at("gap_pre").is_null());
  for (const char* key : {"step", "k", "j", "sum_sq_pre", "sum_sq_post", "potential_pre", "potential_post",
                          "score", "depth", "delta_V", "dim", "log_det", "degenerate"}) {
    EXPECT_TRUE(obj.contains(key)) << key;
  }
}

TEST(Trace, ReportsBadLines) {
  std::istringstream in("{\"step\":0}\nnot json\n");
  try {
    read_trace(in);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
}

TEST(RootHermite, MatchesDefinition) {
  const Basis b = latmaj::testing::rows({{3, 0}, {0, 1}});
  const GsoState g = compute_gso(b);
  // ln ||b_0|| = ln 3, L = ln 3, d = 2.
  EXPECT_NEAR(root_hermite(b, g), std::exp((std::log(3.0) - std::log(3.0) / 2) / 2), 1e-15);
}
