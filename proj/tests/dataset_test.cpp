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
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <gtest/gtest.h>

#include "longtail/dataset.hpp"
#include "longtail/error.hpp"
#include "oracles.hpp"

namespace longtail {
namespace {

ParseResult ParseText(const std::string& text, Format format = Format::kMovielensDat,
                      char delimiter = '\t') {
  std::istringstream in(text);
  return ParseInteractions(in, ParseOptions{format, delimiter});
}

// Builds a set from (user id, item id) pairs with rating 1.
InteractionSet FromPairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string text;
  for (const auto& [u, i] : pairs) text += u + "::" + i + "::1::0\n";
  return ParseText(text).set;
}

std::set<std::pair<std::string, std::string>> ExternalPairs(const InteractionSet& s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& x : s.interactions()) out.emplace(s.users().id(x.user), s.items().id(x.item));
  return out;
}

TEST(ParseTest, MovielensLine) {
  const auto r = ParseText("1::1193::5::978300760\n");
  ASSERT_EQ(r.set.size(), 1u);
  const auto& x = r.set.interactions()[0];
  EXPECT_EQ(r.set.users().id(x.user), "1");
  EXPECT_EQ(r.set.items().id(x.item), "1193");
  EXPECT_EQ(x.rating, 5.0);
  ASSERT_TRUE(x.timestamp.has_value());
  EXPECT_EQ(*x.timestamp, 978300760);
}

TEST(ParseTest, DelimitedTabLine) {
  const auto r = ParseText("7\t42\t3.0\n", Format::kDelimited, '\t');
  ASSERT_EQ(r.set.size(), 1u);
  const auto& x = r.set.interactions()[0];
  EXPECT_EQ(r.set.users().id(x.user), "7");
  EXPECT_EQ(r.set.items().id(x.item), "42");
  EXPECT_EQ(x.rating, 3.0);
  EXPECT_FALSE(x.timestamp.has_value());
}

TEST(ParseTest, DelimitedSkipsCommentsAndBlankLines) {
  const auto r = ParseText("# header\n1,2,4\n\n3,2,5,100\n", Format::kDelimited, ',');
  EXPECT_EQ(r.set.size(), 2u);
  EXPECT_EQ(r.lines_read, 2u);
}

TEST(ParseTest, NonNumericRatingReportsLine) {
  try {
    ParseText("1::1193::abc::0\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseTest, WrongFieldCountReportsLine) {
  try {
    ParseText("1::2::3::4\n1::2::3\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseText("1\t2\n", Format::kDelimited), ParseError);
}

TEST(ParseTest, EmptyInputIsAnError) {
  EXPECT_THROW(ParseText(""), EmptyInputError);
  EXPECT_THROW(ParseText("# only a comment\n", Format::kDelimited), EmptyInputError);
}

TEST(ParseTest, DuplicateKeepsLastAndCounts) {
  const auto r = ParseText("1::10::2::0\n2::10::3::0\n1::10::5::9\n");
  EXPECT_EQ(r.duplicates, 1u);
  ASSERT_EQ(r.set.size(), 2u);
  const auto u1 = *r.set.users().Find("1");
  const auto i10 = *r.set.items().Find("10");
  ASSERT_TRUE(r.set.Contains(u1, i10));
  EXPECT_EQ(r.set.user_ratings(u1)[0], 5.0);
}

TEST(ParseTest, DenseIndicesCoverEntities) {
  const auto r = ParseText("b::x::1::0\na::y::1::0\nb::y::1::0\n");
  EXPECT_EQ(r.set.num_users(), 2u);
  EXPECT_EQ(r.set.num_items(), 2u);
  EXPECT_EQ(r.set.users().id(0), "b");
  EXPECT_EQ(r.set.items().id(1), "y");
  std::size_t total = 0;
  for (UserIndex u = 0; u < r.set.num_users(); ++u) total += r.set.user_items(u).size();
  EXPECT_EQ(total, r.set.size());
}

TEST(FilterTest, ToyTwoPassExample) {
  const auto s = FromPairs({{"u1", "a"}, {"u1", "b"}, {"u2", "a"}, {"u3", "a"}, {"u3", "b"}});
  const auto f = FilterCore(s, 2, 2);
  const std::set<std::pair<std::string, std::string>> want = {
      {"u1", "a"}, {"u1", "b"}, {"u3", "a"}, {"u3", "b"}};
  EXPECT_EQ(ExternalPairs(f.set), want);
  EXPECT_EQ(f.set.num_users(), 2u);
  EXPECT_EQ(f.set.num_items(), 2u);
  EXPECT_EQ(f.summary.after_item_pass.ratings, 5u);
  EXPECT_EQ(f.summary.after_user_pass.users, 2u);
}

TEST(FilterTest, SinglePassEachNoIteration) {
  // Dropping u2 leaves item c with one rating; no second item pass runs.
  const auto s = FromPairs({{"u1", "a"}, {"u1", "b"}, {"u2", "c"}, {"u3", "c"}, {"u3", "a"},
                            {"u3", "b"}});
  const auto f = FilterCore(s, 2, 2);
  EXPECT_EQ(f.set.size(), 5u);
  EXPECT_EQ(f.summary.after_user_pass.items, 3u);
  EXPECT_NE(f.summary.ToCsv().find("iterated=false rounds=1"), std::string::npos);
}

TEST(FilterTest, EmptyResultNamesThreshold) {
  const auto s = FromPairs({{"u1", "a"}, {"u2", "b"}});
  try {
    FilterCore(s, 2, 1);
    FAIL();
  } catch (const EmptyAfterFilterError& e) {
    EXPECT_EQ(e.threshold(), "min_item_ratings");
  }
  try {
    FilterCore(s, 1, 5);
    FAIL();
  } catch (const EmptyAfterFilterError& e) {
    EXPECT_EQ(e.threshold(), "min_user_ratings");
  }
  EXPECT_THROW(FilterCore(s, 0, 1), ConfigError);
}

bool MeetsThresholds(const InteractionSet& s, std::size_t min_item, std::size_t min_user) {
  for (ItemIndex i = 0; i < s.num_items(); ++i) {
    if (s.item_users(i).size() < min_item) return false;
  }
  for (UserIndex u = 0; u < s.num_users(); ++u) {
    if (s.user_items(u).size() < min_user) return false;
  }
  return true;
}

TEST(FilterTest, SinglePassIsIdentityExactlyOnStableSets) {
  int stable = 0, unstable = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng(900 + trial);
    const auto s = oracle::RandomInteractions(rng, 40, 30, 0.3);
    const auto once = FilterCore(s, 8, 6);
    const auto twice = FilterCore(once.set, 8, 6);
    const bool ok = MeetsThresholds(once.set, 8, 6);
    EXPECT_EQ(once.set == twice.set, ok);
    (ok ? stable : unstable) += 1;
  }
  // Both branches must actually be exercised.
  EXPECT_GT(stable, 0);
  EXPECT_GT(unstable, 0);
}

TEST(FilterTest, IteratedFilterIsIdempotent) {
  const auto toy = FromPairs({{"u1", "a"}, {"u1", "b"}, {"u2", "c"}, {"u3", "c"}, {"u3", "a"},
                              {"u3", "b"}});
  const auto fixed = FilterCore(toy, 2, 2, true);
  EXPECT_EQ(fixed.set.size(), 4u);
  EXPECT_EQ(fixed.summary.rounds, 2);
  EXPECT_NE(fixed.summary.ToCsv().find("iterated=true rounds=2"), std::string::npos);
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(950 + trial);
    const auto s = oracle::RandomInteractions(rng, 40, 30, 0.3);
    const auto once = FilterCore(s, 7, 6, true);
    EXPECT_TRUE(MeetsThresholds(once.set, 7, 6));
    EXPECT_EQ(once.set, FilterCore(once.set, 7, 6, true).set);
    EXPECT_EQ(once.set, FilterCore(once.set, 7, 6, false).set);
  }
}

TEST(FilterTest, BijectiveOnRandomSets) {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(900 + trial);
    const auto s = oracle::RandomInteractions(rng, 40, 30, 0.3);
    const auto once = FilterCore(s, 8, 6);
    // Every dense index is used and maps to distinct external ids.
    EXPECT_EQ(once.set.distinct_users(), once.set.num_users());
    EXPECT_EQ(once.set.distinct_items(), once.set.num_items());
    std::set<std::string> ids(once.set.items().ids().begin(), once.set.items().ids().end());
    EXPECT_EQ(ids.size(), once.set.num_items());
    for (const auto& pair : ExternalPairs(once.set)) {
      EXPECT_TRUE(ExternalPairs(s).count(pair));
    }
  }
}

TEST(SplitTest, TenInteractionsGiveEightTwo) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int n = 0; n < 10; ++n) pairs.emplace_back("u" + std::to_string(n % 3), "i" + std::to_string(n));
  const auto p = Split(FromPairs(pairs), 0.8, 5);
  EXPECT_EQ(p.train.size(), 8u);
  EXPECT_EQ(p.test.size(), 2u);
}

TEST(SplitTest, PartitionDeterminismAndSeedSensitivity) {
  Rng rng(31);
  const auto s = oracle::RandomInteractions(rng, 30, 30, 0.3);
  ASSERT_GE(s.size(), 100u);
  const auto a = Split(s, 0.8, 11);
  const auto b = Split(s, 0.8, 11);
  const auto c = Split(s, 0.8, 12);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_FALSE(a.train == c.train);

  const auto train = ExternalPairs(a.train);
  const auto test = ExternalPairs(a.test);
  EXPECT_EQ(train.size() + test.size(), s.size());
  for (const auto& pair : test) EXPECT_FALSE(train.count(pair));
  const double want = 0.8 * static_cast<double>(s.size());
  EXPECT_LE(std::abs(static_cast<double>(a.train.size()) - want), 1.0);
}

TEST(SplitTest, RatioOutOfRange) {
  const auto s = FromPairs({{"u", "a"}, {"u", "b"}});
  EXPECT_THROW(Split(s, 0.0, 1), ConfigError);
  EXPECT_THROW(Split(s, 1.0, 1), ConfigError);
}

// Items a..e with counts 5, 3, 2, 1, 1 (index order a < b < ...).
InteractionSet CountsFixture(const std::vector<int>& counts) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int n = 0; n < counts[i]; ++n) {
      pairs.emplace_back("u" + std::to_string(n), std::string(1, static_cast<char>('a' + i)));
    }
  }
  return FromPairs(pairs);
}

std::vector<std::string> Names(const InteractionSet& s, const std::vector<ItemIndex>& items) {
  std::vector<std::string> out;
  for (auto i : items) out.push_back(s.items().id(i));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ProfileTest, FiveItemExample) {
  const auto s = CountsFixture({5, 3, 2, 1, 1});
  const auto p = MakePopularityProfile(s, 0.2);
  EXPECT_EQ(Names(s, p.head), (std::vector<std::string>{"a"}));
  EXPECT_EQ(Names(s, p.long_tail), (std::vector<std::string>{"b", "c", "d", "e"}));
  EXPECT_EQ(p.max_rho(), 5u);
}

TEST(ProfileTest, TieBrokenByIndex) {
  const auto s = CountsFixture({2, 2});
  const auto p = MakePopularityProfile(s, 0.5);
  EXPECT_EQ(Names(s, p.head), (std::vector<std::string>{"a"}));
  EXPECT_EQ(Names(s, p.long_tail), (std::vector<std::string>{"b"}));
}

TEST(ProfileTest, SingleItemHasEmptyTail) {
  const auto s = CountsFixture({7});
  const auto p = MakePopularityProfile(s, 0.2);
  EXPECT_EQ(p.head.size(), 1u);
  EXPECT_TRUE(p.long_tail.empty());
}

TEST(ProfileTest, PartitionPropertiesOnRandomSplits) {
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(700 + trial);
    const auto s = oracle::RandomInteractions(rng, 25, 40, 0.25);
    const auto split = Split(s, 0.8, static_cast<std::uint64_t>(trial));
    const auto p = MakePopularityProfile(split.train, 0.2);
    std::size_t total = 0, trained = 0;
    for (auto r : p.rho) {
      total += r;
      trained += r > 0 ? 1 : 0;
    }
    EXPECT_EQ(total, split.train.size());
    EXPECT_EQ(p.head.size(), static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(trained))));
    EXPECT_EQ(p.head.size() + p.long_tail.size(), trained);
    for (auto h : p.head) {
      EXPECT_FALSE(p.in_long_tail[h]);
      for (auto t : p.long_tail) {
        EXPECT_TRUE(p.rho[h] > p.rho[t] || (p.rho[h] == p.rho[t] && h < t));
      }
    }
  }
}

TEST(ProfileTest, RejectsBadInput) {
  EXPECT_THROW(MakePopularityProfile(InteractionSet(), 0.2), ConfigError);
  EXPECT_THROW(MakePopularityProfile(CountsFixture({1, 2}), 1.0), ConfigError);
}

}  // namespace
}  // namespace longtail
