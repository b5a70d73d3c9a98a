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
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "synthetic_data.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic MovieLens-shaped rating file", "longtail_synth"};
  longtail::synthetic::Options opt;
  std::string output;
  app.add_option("--output", output, "destination file (movielens-dat)")->required();
  app.add_option("--users", opt.users, "number of users")->capture_default_str();
  app.add_option("--items", opt.items, "number of items")->capture_default_str();
  app.add_option("--dim", opt.dim, "latent taste dimensions")->capture_default_str();
  app.add_option("--popularity-exponent", opt.popularity_exponent)->capture_default_str();
  app.add_option("--taste-strength", opt.taste_strength)->capture_default_str();
  app.add_option("--seed", opt.seed)->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot open " << output << "\n";
    return 2;
  }
  const auto ratings = longtail::synthetic::Generate(opt);
  longtail::synthetic::WriteMovielens(out, ratings);
  std::cout << "wrote " << ratings.size() << " ratings to " << output << "\n";
  return out ? 0 : 2;
}
