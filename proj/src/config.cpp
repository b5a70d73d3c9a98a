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
#include "longtail/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "longtail/error.hpp"

namespace longtail {

namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(',', start);
    const auto part = Trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!part.empty()) parts.push_back(part);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ToDouble(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, v));
  }
  return out;
}

template <typename Int>
Int ToInt(std::string_view key, std::string_view v) {
  Int out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, v));
  }
  return out;
}

bool ToBool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", key, v));
}

char ToDelimiter(std::string_view v) {
  if (v == "\\t" || v == "tab") return '\t';
  if (v == "comma") return ',';
  if (v == "space") return ' ';
  if (v.size() != 1) throw ConfigError(fmt::format("delimiter: expected one character, got '{}'", v));
  return v[0];
}

std::string DelimiterName(char c) {
  if (c == '\t') return "tab";
  if (c == ',') return "comma";
  if (c == ' ') return "space";
  return std::string(1, c);
}

std::string Bool(bool b) { return b ? "true" : "false"; }

bool ApplyTrainKey(TrainConfig& t, std::string_view field, std::string_view key, std::string_view v) {
  if (field == "dim") {
    t.dim = ToInt<int>(key, v);
  } else if (field == "learning_rate") {
    t.learning_rate = ToDouble(key, v);
  } else if (field == "reg") {
    t.reg = ToDouble(key, v);
  } else if (field == "epochs") {
    t.epochs = ToInt<int>(key, v);
  } else if (field == "init_stddev") {
    t.init_stddev = ToDouble(key, v);
  } else if (field == "item_bias") {
    t.item_bias = ToBool(key, v);
  } else if (field == "support_weighting") {
    t.support_weighting = ToBool(key, v);
  } else {
    return false;
  }
  return true;
}

}  // namespace

std::vector<double> ExperimentConfig::DefaultAlphas() {
  std::vector<double> a;
  for (int i = 0; i <= 10; ++i) a.push_back(i / 20.0);
  return a;
}

const std::vector<std::string>& ExperimentConfig::Keys() {
  static const std::vector<std::string> keys = {
      "input",        "format",        "delimiter",       "min_user",
      "min_item",     "filter_iterate", "split_ratio",   "seed",            "algorithms",
      "alphas",       "k",             "head_fraction",   "clamp_floor",
      "normalize",    "exclude_train", "output",          "threads",
      "bpr.dim",      "bpr.learning_rate",                "bpr.reg",
      "bpr.epochs",   "bpr.init_stddev", "bpr.item_bias", "rank_als.dim",
      "rank_als.reg", "rank_als.epochs", "rank_als.init_stddev",
      "rank_als.support_weighting",
  };
  return keys;
}

void ExperimentConfig::Apply(std::string_view key, std::string_view raw) {
  const std::string_view v = Trim(raw);
  if (key == "input") {
    input = std::string(v);
  } else if (key == "format") {
    format = ParseFormat(v);
  } else if (key == "delimiter") {
    delimiter = ToDelimiter(v);
  } else if (key == "min_user") {
    min_user = ToInt<std::size_t>(key, v);
  } else if (key == "min_item") {
    min_item = ToInt<std::size_t>(key, v);
  } else if (key == "filter_iterate") {
    filter_iterate = ToBool(key, v);
  } else if (key == "split_ratio") {
    split_ratio = ToDouble(key, v);
  } else if (key == "seed") {
    seed = ToInt<std::uint64_t>(key, v);
  } else if (key == "algorithms") {
    algorithms.clear();
    for (auto name : SplitList(v)) algorithms.push_back(ParseAlgorithm(name));
  } else if (key == "alphas") {
    alphas.clear();
    for (auto a : SplitList(v)) alphas.push_back(ToDouble(key, a));
  } else if (key == "k") {
    k = ToInt<int>(key, v);
  } else if (key == "head_fraction") {
    head_fraction = ToDouble(key, v);
  } else if (key == "clamp_floor") {
    clamp_floor = ToInt<std::uint32_t>(key, v);
  } else if (key == "normalize") {
    normalize = ToBool(key, v);
  } else if (key == "exclude_train") {
    exclude_train = ToBool(key, v);
  } else if (key == "output") {
    output = std::string(v);
  } else if (key == "threads") {
    threads = ToInt<int>(key, v);
  } else if (key.starts_with("bpr.") && key != "bpr.support_weighting" &&
             ApplyTrainKey(bpr, key.substr(4), key, v)) {
  } else if (key.starts_with("rank_als.") && key != "rank_als.learning_rate" &&
             key != "rank_als.item_bias" && ApplyTrainKey(rank_als, key.substr(9), key, v)) {
  } else {
    throw ConfigError(fmt::format("unknown configuration key '{}'", key));
  }
}

void ExperimentConfig::ApplyAll(const KeyValues& values) {
  for (const auto& [key, value] : values) Apply(key, value);
}

void ExperimentConfig::Validate() const {
  if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
  if (alphas.empty()) throw ConfigError("at least one alpha is required");
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (!(alphas[a] >= 0.0 && alphas[a] <= 1.0)) {
      throw ConfigError(fmt::format("alpha must lie in [0, 1], got {}", alphas[a]));
    }
    if (a > 0 && !(alphas[a] > alphas[a - 1])) {
      throw ConfigError("alphas must be strictly increasing");
    }
  }
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (algorithms[a] == algorithms[b]) {
        throw ConfigError(fmt::format("algorithm '{}' listed twice", AlgorithmName(algorithms[a])));
      }
    }
  }
  if (min_user < 1 || min_item < 1) throw ConfigError("min_user and min_item must be >= 1");
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw ConfigError(fmt::format("split_ratio must lie in (0, 1), got {}", split_ratio));
  }
  if (k < 1) throw ConfigError(fmt::format("k must be >= 1, got {}", k));
  if (!(head_fraction > 0.0 && head_fraction < 1.0)) {
    throw ConfigError(fmt::format("head_fraction must lie in (0, 1), got {}", head_fraction));
  }
  if (clamp_floor < 2) throw ConfigError(fmt::format("clamp_floor must be >= 2, got {}", clamp_floor));
  if (threads < 1) throw ConfigError(fmt::format("threads must be >= 1, got {}", threads));
  bpr.Validate();
  rank_als.Validate();
}

KeyValues ExperimentConfig::ToKeyValues() const {
  std::string algos, alpha_list;
  for (auto a : algorithms) algos += (algos.empty() ? "" : ",") + std::string(AlgorithmName(a));
  for (double a : alphas) alpha_list += (alpha_list.empty() ? "" : ",") + fmt::format("{}", a);
  return {
      {"input", input},
      {"format", std::string(FormatName(format))},
      {"delimiter", DelimiterName(delimiter)},
      {"min_user", std::to_string(min_user)},
      {"min_item", std::to_string(min_item)},
      {"filter_iterate", Bool(filter_iterate)},
      {"split_ratio", fmt::format("{}", split_ratio)},
      {"seed", std::to_string(seed)},
      {"algorithms", algos},
      {"alphas", alpha_list},
      {"k", std::to_string(k)},
      {"head_fraction", fmt::format("{}", head_fraction)},
      {"clamp_floor", std::to_string(clamp_floor)},
      {"normalize", Bool(normalize)},
      {"exclude_train", Bool(exclude_train)},
      {"output", output},
      {"threads", std::to_string(threads)},
      {"bpr.dim", std::to_string(bpr.dim)},
      {"bpr.learning_rate", fmt::format("{}", bpr.learning_rate)},
      {"bpr.reg", fmt::format("{}", bpr.reg)},
      {"bpr.epochs", std::to_string(bpr.epochs)},
      {"bpr.init_stddev", fmt::format("{}", bpr.init_stddev)},
      {"bpr.item_bias", Bool(bpr.item_bias)},
      {"rank_als.dim", std::to_string(rank_als.dim)},
      {"rank_als.reg", fmt::format("{}", rank_als.reg)},
      {"rank_als.epochs", std::to_string(rank_als.epochs)},
      {"rank_als.init_stddev", fmt::format("{}", rank_als.init_stddev)},
      {"rank_als.support_weighting", Bool(rank_als.support_weighting)},
  };
}

TrainConfig ExperimentConfig::TrainConfigFor(Algorithm algorithm) const {
  TrainConfig t = algorithm == Algorithm::kRankAls ? rank_als : bpr;
  t.seed = seed;
  return t;
}

KeyValues ParseKeyValues(std::string_view text, const std::string& origin) {
  KeyValues out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected key=value", origin, line_no));
    }
    const auto key = Trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", origin, line_no));
    out.emplace_back(std::string(key), std::string(Trim(line.substr(eq + 1))));
  }
  return out;
}

KeyValues ReadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseKeyValues(buffer.str(), path);
}

}  // namespace longtail
