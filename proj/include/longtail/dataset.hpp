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
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace longtail {

using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;

enum class Format { kMovielensDat, kDelimited };

Format ParseFormat(std::string_view name);
std::string_view FormatName(Format format);

// Bijection between opaque external identifiers and dense indices
// 0..size()-1, assigned in order of first appearance.
class IdIndex {
 public:
  IdIndex() = default;
  explicit IdIndex(std::vector<std::string> ids);

  std::uint32_t GetOrAdd(std::string_view id);
  std::optional<std::uint32_t> Find(std::string_view id) const;
  const std::string& id(std::uint32_t index) const { return ids_.at(index); }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

// One rating with its endpoints already mapped to dense indices.
struct Interaction {
  UserIndex user = 0;
  ItemIndex item = 0;
  double rating = 0.0;
  std::optional<std::int64_t> timestamp;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

// Immutable set of interactions over a shared index space. Each (user, item)
// pair appears at most once. Sets produced by parsing or filtering cover
// their indices exactly; the two halves of a split share the index space of
// the set they were split from.
class InteractionSet {
 public:
  InteractionSet();
  InteractionSet(std::shared_ptr<const IdIndex> users,
                 std::shared_ptr<const IdIndex> items,
                 std::vector<Interaction> interactions);

  std::span<const Interaction> interactions() const { return interactions_; }
  std::size_t size() const { return interactions_.size(); }
  bool empty() const { return interactions_.empty(); }

  std::size_t num_users() const { return users_->size(); }
  std::size_t num_items() const { return items_->size(); }
  const IdIndex& users() const { return *users_; }
  const IdIndex& items() const { return *items_; }
  const std::shared_ptr<const IdIndex>& user_index_ptr() const { return users_; }
  const std::shared_ptr<const IdIndex>& item_index_ptr() const { return items_; }

  // Items rated by u, ascending.
  std::span<const ItemIndex> user_items(UserIndex u) const;
  // Ratings aligned with user_items(u).
  std::span<const double> user_ratings(UserIndex u) const;
  // Users who rated i, ascending.
  std::span<const UserIndex> item_users(ItemIndex i) const;
  std::span<const double> item_ratings(ItemIndex i) const;

  bool Contains(UserIndex u, ItemIndex i) const;
  std::size_t distinct_users() const { return distinct_users_; }
  std::size_t distinct_items() const { return distinct_items_; }

  friend bool operator==(const InteractionSet& a, const InteractionSet& b);

 private:
  void BuildAdjacency();

  std::shared_ptr<const IdIndex> users_;
  std::shared_ptr<const IdIndex> items_;
  std::vector<Interaction> interactions_;

  std::vector<std::size_t> user_offsets_;
  std::vector<ItemIndex> user_items_;
  std::vector<double> user_ratings_;
  std::vector<std::size_t> item_offsets_;
  std::vector<UserIndex> item_users_;
  std::vector<double> item_ratings_;
  std::size_t distinct_users_ = 0;
  std::size_t distinct_items_ = 0;
};

struct ParseOptions {
  Format format = Format::kMovielensDat;
  char delimiter = '\t';  // delimited format only
};

struct ParseResult {
  InteractionSet set;
  std::size_t lines_read = 0;  // data lines, excluding blanks and comments
  std::size_t duplicates = 0;
};

// Duplicate (user, item) lines keep the last occurrence's rating and
// timestamp at the position of the first occurrence.
ParseResult ParseInteractions(std::istream& source, const ParseOptions& options);
ParseResult ParseInteractionsFile(const std::string& path, const ParseOptions& options);

struct EntityCounts {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t ratings = 0;
};

struct FilterSummary {
  std::size_t min_item_ratings = 0;
  std::size_t min_user_ratings = 0;
  EntityCounts before;
  EntityCounts after_item_pass;
  EntityCounts after_user_pass;  // final counts when iterated
  bool iterated = false;
  int rounds = 1;  // item+user pass pairs applied

  // stage,users,items,ratings rows plus the pass-order metadata.
  std::string ToCsv() const;
};

struct FilterResult {
  InteractionSet set;
  FilterSummary summary;
};

// One pass dropping items with fewer than min_item_ratings ratings, then one
// pass dropping users with fewer than min_user_ratings remaining ratings.
// No fixed-point iteration; indices are re-densified in original order.
// One item pass, then one user pass. With `iterate` the pair repeats until
// nothing changes, which makes the result a fixed point of the filter.
FilterResult FilterCore(const InteractionSet& set, std::size_t min_item_ratings = 30,
                        std::size_t min_user_ratings = 30, bool iterate = false);

struct SplitPair {
  InteractionSet train;
  InteractionSet test;
  std::uint64_t seed = 0;
  double ratio = 0.8;
  // Users/items with interactions in test but none in train.
  std::size_t test_only_users = 0;
  std::size_t test_only_items = 0;
};

// Global uniform assignment: round(ratio * |set|) interactions go to train.
SplitPair Split(const InteractionSet& set, double ratio, std::uint64_t seed);

struct PopularityProfile {
  std::vector<std::uint32_t> rho;    // training count per item index
  std::vector<ItemIndex> head;       // ascending index order
  std::vector<ItemIndex> long_tail;  // ascending index order
  std::vector<bool> in_long_tail;
  double head_fraction = 0.2;

  std::size_t num_items() const { return rho.size(); }
  std::uint32_t max_rho() const;
};

PopularityProfile MakePopularityProfile(const InteractionSet& train, double head_fraction = 0.2);

// 64-bit FNV-1a, used for dataset checksums in run provenance.
std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL);

}  // namespace longtail
