#include "latmaj/selector.hpp"

#include <gtest/gtest.h>

using namespace latmaj;

TEST(Selector, ParsesNamesAndOptions) {
  EXPECT_EQ(parse_selector("ssgg").kind, SelectorKind::SSGG);
  const SelectorSpec t = parse_selector("thermal:alpha=1.5");
  EXPECT_EQ(t.kind, SelectorKind::Thermal);
  EXPECT_EQ(t.alpha, 1.5);
  const SelectorSpec g = parse_selector("gdlll-rt:K=7,tau=0.02,shortlist=off");
  EXPECT_EQ(g.kind, SelectorKind::GDLLL_RT);
  EXPECT_EQ(g.shortlist_K, 7u);
  EXPECT_DOUBLE_EQ(g.tau, 0.02);
  EXPECT_FALSE(g.shortlist);
  EXPECT_FALSE(parse_selector("gdlll:K=auto").shortlist_K.has_value());
}

TEST(Selector, RoundTrip) {
  for (const char* text : {"lll", "deepvar", "thermal:alpha=0.75", "thermal-adaptive:gamma=3,alpha_min=0.5",
                           "gdlll-ca:overhead=4", "schurk:K=5", "falphabeta:alpha=2,beta=1", "pot",
                           "thermal-sched:P=10"}) {
    const SelectorSpec s = parse_selector(text);
    const SelectorSpec again = parse_selector(to_string(s));
    EXPECT_EQ(to_string(again), to_string(s)) << text;
    EXPECT_EQ(again.kind, s.kind);
  }
  EXPECT_EQ(to_string(parse_selector("ssgg")), "ssgg");
}

TEST(Selector, Rejects) {
  EXPECT_THROW(parse_selector("bkz"), std::invalid_argument);
  EXPECT_THROW(parse_selector("thermal:alpha=-1"), std::invalid_argument);
  EXPECT_THROW(parse_selector("thermal:alpha"), std::invalid_argument);
  EXPECT_THROW(parse_selector("gdlll:K=0"), std::invalid_argument);
  EXPECT_THROW(parse_selector("gdlll:K=1.5"), std::invalid_argument);
  EXPECT_THROW(parse_selector("ssgg:colour=red"), std::invalid_argument);
}

TEST(Selector, Families) {
  EXPECT_TRUE(is_gdlll_family(SelectorKind::GDLLL_CA));
  EXPECT_FALSE(is_gdlll_family(SelectorKind::DeepVar));
  EXPECT_EQ(selector_name(SelectorKind::ThermalAdaptive), "thermal-adaptive");
}
