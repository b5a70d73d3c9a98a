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
#include "longtail/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>

#include <fmt/format.h>

#include "longtail/error.hpp"
#include "longtail/rng.hpp"

namespace longtail {

Format ParseFormat(std::string_view name) {
  if (name == "movielens-dat") return Format::kMovielensDat;
  if (name == "delimited") return Format::kDelimited;
  throw ConfigError(fmt::format("unknown format '{}' (expected movielens-dat or delimited)", name));
}

std::string_view FormatName(Format format) {
  return format == Format::kMovielensDat ? "movielens-dat" : "delimited";
}

IdIndex::IdIndex(std::vector<std::string> ids) {
  for (auto& id : ids) GetOrAdd(id);
}

std::uint32_t IdIndex::GetOrAdd(std::string_view id) {
  auto [it, inserted] = lookup_.try_emplace(std::string(id), static_cast<std::uint32_t>(ids_.size()));
  if (inserted) ids_.emplace_back(id);
  return it->second;
}

std::optional<std::uint32_t> IdIndex::Find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

InteractionSet::InteractionSet()
    : users_(std::make_shared<IdIndex>()), items_(std::make_shared<IdIndex>()) {
  BuildAdjacency();
}

InteractionSet::InteractionSet(std::shared_ptr<const IdIndex> users,
                               std::shared_ptr<const IdIndex> items,
                               std::vector<Interaction> interactions)
    : users_(std::move(users)), items_(std::move(items)), interactions_(std::move(interactions)) {
  for (const auto& x : interactions_) {
    if (x.user >= users_->size() || x.item >= items_->size()) {
      throw IndexError(fmt::format("interaction ({}, {}) outside index ranges ({}, {})", x.user,
                                   x.item, users_->size(), items_->size()));
    }
    if (!std::isfinite(x.rating)) throw ConfigError("non-finite rating");
  }
  BuildAdjacency();
}

void InteractionSet::BuildAdjacency() {
  const std::size_t nu = users_->size();
  const std::size_t ni = items_->size();
  user_offsets_.assign(nu + 1, 0);
  item_offsets_.assign(ni + 1, 0);
  for (const auto& x : interactions_) {
    ++user_offsets_[x.user + 1];
    ++item_offsets_[x.item + 1];
  }
  std::partial_sum(user_offsets_.begin(), user_offsets_.end(), user_offsets_.begin());
  std::partial_sum(item_offsets_.begin(), item_offsets_.end(), item_offsets_.begin());

  // Sort interaction ids by (user, item) and (item, user) to fill both sides.
  std::vector<std::size_t> order(interactions_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = interactions_[a];
    const auto& y = interactions_[b];
    return x.user != y.user ? x.user < y.user : x.item < y.item;
  });
  user_items_.resize(order.size());
  user_ratings_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& x = interactions_[order[k]];
    if (k > 0) {
      const auto& prev = interactions_[order[k - 1]];
      if (prev.user == x.user && prev.item == x.item) {
        throw ConfigError(fmt::format("duplicate (user, item) pair ({}, {}) in interaction set",
                                      users_->id(x.user), items_->id(x.item)));
      }
    }
    user_items_[k] = x.item;
    user_ratings_[k] = x.rating;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = interactions_[a];
    const auto& y = interactions_[b];
    return x.item != y.item ? x.item < y.item : x.user < y.user;
  });
  item_users_.resize(order.size());
  item_ratings_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& x = interactions_[order[k]];
    item_users_[k] = x.user;
    item_ratings_[k] = x.rating;
  }

  distinct_users_ = 0;
  for (std::size_t u = 0; u < nu; ++u) distinct_users_ += user_offsets_[u + 1] > user_offsets_[u];
  distinct_items_ = 0;
  for (std::size_t i = 0; i < ni; ++i) distinct_items_ += item_offsets_[i + 1] > item_offsets_[i];
}

std::span<const ItemIndex> InteractionSet::user_items(UserIndex u) const {
  if (u >= num_users()) throw IndexError(fmt::format("user index {} out of range", u));
  return std::span<const ItemIndex>(user_items_).subspan(user_offsets_[u],
                                                         user_offsets_[u + 1] - user_offsets_[u]);
}

std::span<const double> InteractionSet::user_ratings(UserIndex u) const {
  if (u >= num_users()) throw IndexError(fmt::format("user index {} out of range", u));
  return std::span<const double>(user_ratings_).subspan(user_offsets_[u],
                                                        user_offsets_[u + 1] - user_offsets_[u]);
}

std::span<const UserIndex> InteractionSet::item_users(ItemIndex i) const {
  if (i >= num_items()) throw IndexError(fmt::format("item index {} out of range", i));
  return std::span<const UserIndex>(item_users_).subspan(item_offsets_[i],
                                                         item_offsets_[i + 1] - item_offsets_[i]);
}

std::span<const double> InteractionSet::item_ratings(ItemIndex i) const {
  if (i >= num_items()) throw IndexError(fmt::format("item index {} out of range", i));
  return std::span<const double>(item_ratings_).subspan(item_offsets_[i],
                                                        item_offsets_[i + 1] - item_offsets_[i]);
}

bool InteractionSet::Contains(UserIndex u, ItemIndex i) const {
  auto items = user_items(u);
  return std::binary_search(items.begin(), items.end(), i);
}

bool operator==(const InteractionSet& a, const InteractionSet& b) {
  return a.users().ids() == b.users().ids() && a.items().ids() == b.items().ids() &&
         std::equal(a.interactions().begin(), a.interactions().end(), b.interactions().begin(),
                    b.interactions().end());
}

namespace {

std::vector<std::string_view> SplitFields(std::string_view line, std::string_view sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + sep.size();
  }
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseRating(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("non-numeric rating '{}'", field));
  }
  if (!std::isfinite(value)) throw ParseError(line, fmt::format("non-finite rating '{}'", field));
  return value;
}

std::int64_t ParseTimestamp(std::string_view field, std::size_t line) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("non-integer timestamp '{}'", field));
  }
  return value;
}

}  // namespace

ParseResult ParseInteractions(std::istream& source, const ParseOptions& options) {
  auto users = std::make_shared<IdIndex>();
  auto items = std::make_shared<IdIndex>();
  std::vector<Interaction> interactions;
  std::unordered_map<std::uint64_t, std::size_t> position;
  ParseResult result;

  const std::string sep =
      options.format == Format::kMovielensDat ? std::string("::") : std::string(1, options.delimiter);

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(source, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    if (options.format == Format::kDelimited && line.front() == '#') continue;
    ++result.lines_read;

    const auto fields = SplitFields(line, sep);
    const bool ok_count = options.format == Format::kMovielensDat
                              ? fields.size() == 4
                              : (fields.size() == 3 || fields.size() == 4);
    if (!ok_count) {
      throw ParseError(line_no, fmt::format("expected {} fields, found {}",
                                            options.format == Format::kMovielensDat ? "4" : "3 or 4",
                                            fields.size()));
    }
    const auto user_id = Trim(fields[0]);
    const auto item_id = Trim(fields[1]);
    if (user_id.empty() || item_id.empty()) throw ParseError(line_no, "empty user or item id");
    Interaction x;
    x.rating = ParseRating(Trim(fields[2]), line_no);
    if (fields.size() == 4) x.timestamp = ParseTimestamp(Trim(fields[3]), line_no);
    x.user = users->GetOrAdd(user_id);
    x.item = items->GetOrAdd(item_id);

    const std::uint64_t key = (std::uint64_t{x.user} << 32) | x.item;
    auto [it, inserted] = position.try_emplace(key, interactions.size());
    if (inserted) {
      interactions.push_back(x);
    } else {
      interactions[it->second] = x;
      ++result.duplicates;
    }
  }
  if (interactions.empty()) throw EmptyInputError("input contains no interactions");
  result.set = InteractionSet(std::move(users), std::move(items), std::move(interactions));
  return result;
}

ParseResult ParseInteractionsFile(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return ParseInteractions(in, options);
}

std::string FilterSummary::ToCsv() const {
  std::string out = "stage,users,items,ratings\n";
  auto row = [&out](std::string_view stage, const EntityCounts& c) {
    out += fmt::format("{},{},{},{}\n", stage, c.users, c.items, c.ratings);
  };
  row("input", before);
  row("after_item_pass", after_item_pass);
  row("after_user_pass", after_user_pass);
  out += fmt::format("# min_item_ratings={} min_user_ratings={}\n", min_item_ratings,
                     min_user_ratings);
  out += fmt::format("# pass_order=items,users iterated={} rounds={}\n", iterated, rounds);
  return out;
}

namespace {

EntityCounts CountsOf(const InteractionSet& s) {
  return {s.distinct_users(), s.distinct_items(), s.size()};
}

// Keeps interactions whose user and item survive, re-densifying both indices
// in their original relative order.
InteractionSet Restrict(const InteractionSet& s, const std::vector<bool>& keep_user,
                        const std::vector<bool>& keep_item) {
  std::vector<std::uint32_t> user_map(s.num_users(), UINT32_MAX);
  std::vector<std::uint32_t> item_map(s.num_items(), UINT32_MAX);
  std::vector<bool> user_seen(s.num_users(), false);
  std::vector<bool> item_seen(s.num_items(), false);
  for (const auto& x : s.interactions()) {
    if (keep_user[x.user] && keep_item[x.item]) {
      user_seen[x.user] = true;
      item_seen[x.item] = true;
    }
  }
  std::vector<std::string> user_ids, item_ids;
  for (std::size_t u = 0; u < s.num_users(); ++u) {
    if (user_seen[u]) {
      user_map[u] = static_cast<std::uint32_t>(user_ids.size());
      user_ids.push_back(s.users().id(static_cast<std::uint32_t>(u)));
    }
  }
  for (std::size_t i = 0; i < s.num_items(); ++i) {
    if (item_seen[i]) {
      item_map[i] = static_cast<std::uint32_t>(item_ids.size());
      item_ids.push_back(s.items().id(static_cast<std::uint32_t>(i)));
    }
  }
  std::vector<Interaction> kept;
  for (const auto& x : s.interactions()) {
    if (keep_user[x.user] && keep_item[x.item]) {
      Interaction y = x;
      y.user = user_map[x.user];
      y.item = item_map[x.item];
      kept.push_back(y);
    }
  }
  return InteractionSet(std::make_shared<IdIndex>(std::move(user_ids)),
                        std::make_shared<IdIndex>(std::move(item_ids)), std::move(kept));
}

}  // namespace

namespace {

// One item pass then one user pass.
InteractionSet FilterRound(const InteractionSet& set, std::size_t min_item_ratings,
                           std::size_t min_user_ratings, EntityCounts* after_item_pass) {
  std::vector<bool> all_users(set.num_users(), true);
  std::vector<bool> keep_item(set.num_items());
  for (ItemIndex i = 0; i < set.num_items(); ++i) {
    keep_item[i] = set.item_users(i).size() >= min_item_ratings;
  }
  InteractionSet items_pass = Restrict(set, all_users, keep_item);
  *after_item_pass = CountsOf(items_pass);
  if (items_pass.empty()) {
    throw EmptyAfterFilterError("min_item_ratings",
                                fmt::format("no interactions left after removing items with "
                                            "fewer than {} ratings (min_item_ratings)",
                                            min_item_ratings));
  }

  std::vector<bool> keep_user(items_pass.num_users());
  std::vector<bool> all_items(items_pass.num_items(), true);
  for (UserIndex u = 0; u < items_pass.num_users(); ++u) {
    keep_user[u] = items_pass.user_items(u).size() >= min_user_ratings;
  }
  InteractionSet out = Restrict(items_pass, keep_user, all_items);
  if (out.empty()) {
    throw EmptyAfterFilterError("min_user_ratings",
                                fmt::format("no interactions left after removing users with "
                                            "fewer than {} ratings (min_user_ratings)",
                                            min_user_ratings));
  }
  return out;
}

}  // namespace

FilterResult FilterCore(const InteractionSet& set, std::size_t min_item_ratings,
                        std::size_t min_user_ratings, bool iterate) {
  if (min_item_ratings < 1 || min_user_ratings < 1) {
    throw ConfigError("filter thresholds must be >= 1");
  }
  FilterResult result;
  result.summary.min_item_ratings = min_item_ratings;
  result.summary.min_user_ratings = min_user_ratings;
  result.summary.iterated = iterate;
  result.summary.before = CountsOf(set);

  result.set = FilterRound(set, min_item_ratings, min_user_ratings, &result.summary.after_item_pass);
  result.summary.rounds = 1;
  while (iterate) {
    EntityCounts ignored;
    InteractionSet next = FilterRound(result.set, min_item_ratings, min_user_ratings, &ignored);
    if (next.size() == result.set.size()) break;
    result.set = std::move(next);
    ++result.summary.rounds;
  }
  result.summary.after_user_pass = CountsOf(result.set);
  return result;
}

SplitPair Split(const InteractionSet& set, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ConfigError(fmt::format("split ratio must lie in (0, 1), got {}", ratio));
  }
  const std::size_t n = set.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t k = n; k > 1; --k) {
    const std::size_t j = rng.below(k);
    std::swap(order[k - 1], order[j]);
  }
  const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  std::vector<bool> to_train(n, false);
  for (std::size_t k = 0; k < n_train; ++k) to_train[order[k]] = true;

  std::vector<Interaction> train, test;
  train.reserve(n_train);
  test.reserve(n - n_train);
  const auto all = set.interactions();
  for (std::size_t k = 0; k < n; ++k) (to_train[k] ? train : test).push_back(all[k]);

  SplitPair pair;
  pair.seed = seed;
  pair.ratio = ratio;
  pair.train = InteractionSet(set.user_index_ptr(), set.item_index_ptr(), std::move(train));
  pair.test = InteractionSet(set.user_index_ptr(), set.item_index_ptr(), std::move(test));
  for (UserIndex u = 0; u < set.num_users(); ++u) {
    pair.test_only_users += pair.train.user_items(u).empty() && !pair.test.user_items(u).empty();
  }
  for (ItemIndex i = 0; i < set.num_items(); ++i) {
    pair.test_only_items += pair.train.item_users(i).empty() && !pair.test.item_users(i).empty();
  }
  return pair;
}

std::uint32_t PopularityProfile::max_rho() const {
  return rho.empty() ? 0 : *std::max_element(rho.begin(), rho.end());
}

PopularityProfile MakePopularityProfile(const InteractionSet& train, double head_fraction) {
  if (train.empty()) throw ConfigError("popularity profile requires a non-empty training set");
  if (!(head_fraction > 0.0 && head_fraction < 1.0)) {
    throw ConfigError(fmt::format("head_fraction must lie in (0, 1), got {}", head_fraction));
  }
  PopularityProfile p;
  p.head_fraction = head_fraction;
  p.rho.resize(train.num_items());
  std::vector<ItemIndex> trained;
  for (ItemIndex i = 0; i < train.num_items(); ++i) {
    p.rho[i] = static_cast<std::uint32_t>(train.item_users(i).size());
    if (p.rho[i] > 0) trained.push_back(i);
  }
  std::sort(trained.begin(), trained.end(), [&](ItemIndex a, ItemIndex b) {
    return p.rho[a] != p.rho[b] ? p.rho[a] > p.rho[b] : a < b;
  });
  // The slack keeps exact products such as 0.2 * 2835 from rounding up.
  const double head_exact = head_fraction * static_cast<double>(trained.size());
  const auto n_head = static_cast<std::size_t>(std::ceil(head_exact - 1e-9 * std::max(1.0, head_exact)));
  p.head.assign(trained.begin(), trained.begin() + static_cast<std::ptrdiff_t>(n_head));
  p.long_tail.assign(trained.begin() + static_cast<std::ptrdiff_t>(n_head), trained.end());
  std::sort(p.head.begin(), p.head.end());
  std::sort(p.long_tail.begin(), p.long_tail.end());
  p.in_long_tail.assign(train.num_items(), false);
  for (ItemIndex i : p.long_tail) p.in_long_tail[i] = true;
  return p;
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

}  // namespace longtail
