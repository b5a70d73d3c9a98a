// Copyright 2026 The Longtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "longtail/error.hpp"
#include "longtail/metrics.hpp"
#include "oracles.hpp"

namespace longtail {
namespace {

// Two users, items a=0, b=1, c=2; rho = {3, 1, 2}; tail = {b, c}.
struct HandCase {
  InteractionSet test;
  PopularityProfile profile;
  std::vector<RecommendationList> lists;

  HandCase() {
    auto users = std::make_shared<IdIndex>(std::vector<std::string>{"u1", "u2"});
    auto items = std::make_shared<IdIndex>(std::vector<std::string>{"a", "b", "c"});
    // u1 holds out b; u2 holds out a and c.
    std::vector<Interaction> xs = {{0, 1, 4.0, {}}, {1, 0, 2.0, {}}, {1, 2, 5.0, {}}};
    test = InteractionSet(users, items, xs);
    profile.rho = {3, 1, 2};
    profile.head = {0};
    profile.long_tail = {1, 2};
    profile.in_long_tail = {false, true, true};
    lists = {{0, {0, 1}, {1, 1}}, {1, {0, 2}, {1, 1}}};
  }
  EvaluationInput Input(int k = 2) const { return {lists, test, profile, k}; }
};

TEST(MetricsTest, HandExamples) {
  const HandCase h;
  EXPECT_DOUBLE_EQ(RecommendationPopularity(h.Input()), 2.25);
  EXPECT_DOUBLE_EQ(AveragePercentageLongTail(h.Input()), 0.5);
  EXPECT_DOUBLE_EQ(LongTailCoverage(h.Input()), 1.0);
  // u1 hits b (1/2), u2 hits a and c (2/2).
  EXPECT_DOUBLE_EQ(PrecisionAtK(h.Input()), 0.75);
}

TEST(MetricsTest, PrecisionContributions) {
  HandCase h;
  h.lists = {{0, {2}, {1}}};
  EXPECT_EQ(PrecisionAtK(h.Input(10)), 0.0);
  // Ten-item catalog: 3 of 10 recommended items are held out.
  auto users = std::make_shared<IdIndex>(std::vector<std::string>{"u", "v"});
  std::vector<std::string> ids;
  for (int i = 0; i < 12; ++i) ids.push_back("i" + std::to_string(i));
  auto items = std::make_shared<IdIndex>(ids);
  std::vector<Interaction> xs = {{0, 0, 1, {}}, {0, 1, 1, {}}, {0, 2, 1, {}}, {0, 11, 1, {}},
                                 {1, 3, 1, {}}, {1, 4, 1, {}}, {1, 5, 1, {}}, {1, 6, 1, {}}};
  const InteractionSet test(users, items, xs);
  PopularityProfile p;
  p.rho.assign(12, 1);
  p.in_long_tail.assign(12, true);
  for (ItemIndex i = 0; i < 12; ++i) p.long_tail.push_back(i);
  std::vector<RecommendationList> one = {{0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {}}};
  EXPECT_DOUBLE_EQ(PrecisionAtK({one, test, p, 10}), 0.3);
  // Contributions 0.2 and 0.4 average to 0.3.
  std::vector<RecommendationList> two = {{0, {0, 1, 7, 8, 9, 10, 3, 4, 5, 6}, {}},
                                         {1, {3, 4, 5, 6, 0, 1, 2, 7, 8, 9}, {}}};
  EXPECT_NEAR(PrecisionAtK({two, test, p, 10}), 0.3, 1e-15);
}

TEST(MetricsTest, ConstantAndEdgeCases) {
  HandCase h;
  h.profile.rho = {4, 4, 4};
  EXPECT_DOUBLE_EQ(RecommendationPopularity(h.Input()), 4.0);
  h.lists = {{0, {1}, {}}, {1, {2}, {}}};
  EXPECT_DOUBLE_EQ(AveragePercentageLongTail(h.Input()), 1.0);
  h.lists = {{0, {0}, {}}, {1, {0}, {}}};
  EXPECT_DOUBLE_EQ(LongTailCoverage(h.Input()), 0.0);
  EXPECT_DOUBLE_EQ(AveragePercentageLongTail(h.Input()), 0.0);
}

TEST(MetricsTest, RepeatedTailItemOverFiftyItemTail) {
  auto users = std::make_shared<IdIndex>(std::vector<std::string>{"u", "v", "w"});
  std::vector<std::string> ids;
  for (int i = 0; i < 51; ++i) ids.push_back("i" + std::to_string(i));
  auto items = std::make_shared<IdIndex>(ids);
  const InteractionSet test(users, items, {{0, 0, 1, {}}, {1, 0, 1, {}}, {2, 0, 1, {}}});
  PopularityProfile p;
  p.rho.assign(51, 1);
  p.in_long_tail.assign(51, true);
  p.in_long_tail[0] = false;
  p.head = {0};
  for (ItemIndex i = 1; i < 51; ++i) p.long_tail.push_back(i);
  const std::vector<RecommendationList> lists = {{0, {0, 7}, {}}, {1, {7, 0}, {}}, {2, {7}, {}}};
  EXPECT_DOUBLE_EQ(LongTailCoverage({lists, test, p, 2}), 0.02);
}

TEST(MetricsTest, EmptyTailMakesCoverageAbsent) {
  HandCase h;
  h.profile.long_tail.clear();
  h.profile.in_long_tail.assign(3, false);
  EXPECT_THROW(LongTailCoverage(h.Input()), UndefinedMetricError);
  const auto r = Evaluate(h.Input(), "pop", 0.0, 1);
  EXPECT_FALSE(r.lcc.has_value());
  EXPECT_EQ(MetricsCsvRow(r), "pop,0,1,2,0.75,2.25,0,NA");
}

TEST(MetricsTest, ValidationRejectsForeignUsersAndItems) {
  HandCase h;
  h.lists = {{0, {5}, {}}};
  EXPECT_THROW(Evaluate(h.Input(), "x", 0, 0), IndexError);
  auto users = std::make_shared<IdIndex>(std::vector<std::string>{"u1", "u2", "u3"});
  h.test = InteractionSet(users, h.test.item_index_ptr(), {{0, 1, 4.0, {}}});
  h.lists = {{2, {0}, {}}};
  EXPECT_THROW(Evaluate(h.Input(), "x", 0, 0), ConfigError);
}

TEST(MetricsTest, AgreesWithBruteForceOracle) {
  Rng rng(2026);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = oracle::MakeMetricCase(rng);
    const EvaluationInput in{c.lists, c.test, c.profile, c.plain.k};
    const auto r = Evaluate(in, "fixture", 0.0, 0);
    EXPECT_NEAR(r.precision, oracle::Precision(c.plain), 1e-12);
    EXPECT_NEAR(r.rp, oracle::Rp(c.plain), 1e-12);
    EXPECT_NEAR(r.apl, oracle::Apl(c.plain), 1e-12);
    ASSERT_TRUE(r.lcc.has_value());
    EXPECT_NEAR(*r.lcc, oracle::Lcc(c.plain), 1e-12);

    EXPECT_GE(r.precision, 0.0);
    EXPECT_LE(r.precision, 1.0);
    EXPECT_GE(r.apl, 0.0);
    EXPECT_LE(r.apl, 1.0);
    EXPECT_LE(*r.lcc, 1.0);
    EXPECT_LE(r.rp, static_cast<double>(*std::max_element(c.profile.rho.begin(), c.profile.rho.end())));
  }
}

TEST(MetricsTest, InvariantToOrderWithinLists) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::MakeMetricCase(rng);
    const auto before = Evaluate({c.lists, c.test, c.profile, c.plain.k}, "x", 0, 0);
    for (auto& list : c.lists) std::reverse(list.items.begin(), list.items.end());
    EXPECT_EQ(before, Evaluate({c.lists, c.test, c.profile, c.plain.k}, "x", 0, 0));
  }
}

TEST(MetricsTest, AddingTailItemNeverLowersCoverage) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = oracle::MakeMetricCase(rng);
    const double before = LongTailCoverage({c.lists, c.test, c.profile, c.plain.k});
    const ItemIndex t = c.profile.long_tail[rng.below(c.profile.long_tail.size())];
    auto& list = c.lists[rng.below(c.lists.size())];
    if (std::find(list.items.begin(), list.items.end(), t) == list.items.end()) list.items.push_back(t);
    EXPECT_GE(LongTailCoverage({c.lists, c.test, c.profile, c.plain.k + 1}), before);
  }
}

}  // namespace
}  // namespace longtail
