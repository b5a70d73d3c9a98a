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
// Python bindings. Dense indices cross the boundary as plain ints; factor
// matrices and score vectors as NumPy arrays.

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "longtail/cli.hpp"
#include "longtail/config.hpp"
#include "longtail/dataset.hpp"
#include "longtail/error.hpp"
#include "longtail/harness.hpp"
#include "longtail/metrics.hpp"
#include "longtail/models.hpp"
#include "longtail/weighting.hpp"

namespace py = pybind11;

namespace longtail {
namespace {

ExperimentConfig ConfigFromDict(const py::dict& values) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : values) {
    std::string text;
    if (py::isinstance<py::bool_>(value)) {
      text = value.cast<bool>() ? "true" : "false";
    } else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& v : value) text += (text.empty() ? "" : ",") + py::str(v).cast<std::string>();
    } else {
      text = py::str(value).cast<std::string>();
    }
    cfg.Apply(key.cast<std::string>(), text);
  }
  cfg.Validate();
  return cfg;
}

py::dict ReportDict(const MetricsReport& r) {
  py::dict d;
  d["algorithm"] = r.algorithm;
  d["alpha"] = r.alpha;
  d["seed"] = r.seed;
  d["k"] = r.k;
  d["precision"] = r.precision;
  d["rp"] = r.rp;
  d["apl"] = r.apl;
  d["lcc"] = r.lcc ? py::cast(*r.lcc) : py::none();
  d["users_evaluated"] = r.users_evaluated;
  d["users_excluded"] = r.users_excluded;
  return d;
}

TrainConfig TrainKwargs(TrainConfig cfg, const py::kwargs& kw) {
  for (const auto& [key, value] : kw) {
    const auto k = key.cast<std::string>();
    if (k == "dim") cfg.dim = value.cast<int>();
    else if (k == "learning_rate") cfg.learning_rate = value.cast<double>();
    else if (k == "reg") cfg.reg = value.cast<double>();
    else if (k == "epochs") cfg.epochs = value.cast<int>();
    else if (k == "seed") cfg.seed = value.cast<std::uint64_t>();
    else if (k == "init_stddev") cfg.init_stddev = value.cast<double>();
    else if (k == "item_bias") cfg.item_bias = value.cast<bool>();
    else if (k == "support_weighting") cfg.support_weighting = value.cast<bool>();
    else throw ConfigError("unknown training option '" + k + "'");
  }
  return cfg;
}

}  // namespace
}  // namespace longtail

PYBIND11_MODULE(_core, m) {
  using namespace longtail;
  m.doc() = "Popularity-aware top-k re-ranking and long-tail evaluation";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<InteractionSet>(m, "InteractionSet")
      .def("__len__", &InteractionSet::size)
      .def_property_readonly("num_users", &InteractionSet::num_users)
      .def_property_readonly("num_items", &InteractionSet::num_items)
      .def("user_id", [](const InteractionSet& s, UserIndex u) { return s.users().id(u); })
      .def("item_id", [](const InteractionSet& s, ItemIndex i) { return s.items().id(i); })
      .def("user_items", [](const InteractionSet& s, UserIndex u) {
        auto items = s.user_items(u);
        return std::vector<ItemIndex>(items.begin(), items.end());
      })
      .def("triples", [](const InteractionSet& s) {
        std::vector<std::tuple<UserIndex, ItemIndex, double>> out;
        for (const auto& x : s.interactions()) out.emplace_back(x.user, x.item, x.rating);
        return out;
      });

  m.def(
      "parse_interactions",
      [](const std::string& path, const std::string& format, const std::string& delimiter) {
        if (delimiter.size() != 1) throw ConfigError("delimiter must be one character");
        auto r = ParseInteractionsFile(path, ParseOptions{ParseFormat(format), delimiter[0]});
        return py::make_tuple(std::move(r.set), r.duplicates);
      },
      py::arg("path"), py::arg("format") = "movielens-dat", py::arg("delimiter") = "\t",
      "Parse a rating file; returns (InteractionSet, duplicate count).");

  m.def(
      "parse_text",
      [](const std::string& text, const std::string& format, const std::string& delimiter) {
        if (delimiter.size() != 1) throw ConfigError("delimiter must be one character");
        std::istringstream in(text);
        return ParseInteractions(in, ParseOptions{ParseFormat(format), delimiter[0]}).set;
      },
      py::arg("text"), py::arg("format") = "movielens-dat", py::arg("delimiter") = "\t");

  m.def(
      "filter_core",
      [](const InteractionSet& s, std::size_t min_item, std::size_t min_user, bool iterate) {
        auto r = FilterCore(s, min_item, min_user, iterate);
        return py::make_tuple(std::move(r.set), r.summary.ToCsv());
      },
      py::arg("set"), py::arg("min_item_ratings") = 30, py::arg("min_user_ratings") = 30,
      py::arg("iterate") = false);

  m.def(
      "split",
      [](const InteractionSet& s, double ratio, std::uint64_t seed) {
        auto p = Split(s, ratio, seed);
        return py::make_tuple(std::move(p.train), std::move(p.test));
      },
      py::arg("set"), py::arg("ratio") = 0.8, py::arg("seed") = 42);

  py::class_<PopularityProfile>(m, "PopularityProfile")
      .def_readonly("rho", &PopularityProfile::rho)
      .def_readonly("head", &PopularityProfile::head)
      .def_readonly("long_tail", &PopularityProfile::long_tail)
      .def_readonly("head_fraction", &PopularityProfile::head_fraction);

  m.def("popularity_profile", &MakePopularityProfile, py::arg("train"), py::arg("head_fraction") = 0.2);

  m.def(
      "item_weights",
      [](const PopularityProfile& p, std::uint32_t floor) { return ItemWeights(p, floor).w; },
      py::arg("profile"), py::arg("clamp_floor") = 2);

  m.def("min_max_normalize", [](std::vector<double> v) { return MinMaxNormalize(v); });

  m.def(
      "blend",
      [](std::vector<double> base, std::vector<double> weights, double alpha, bool normalize) {
        BlendConfig cfg;
        cfg.alpha = alpha;
        cfg.normalize = normalize;
        return Blend(base, WeightVector::Custom(std::move(weights)), cfg);
      },
      py::arg("base"), py::arg("weights"), py::arg("alpha"), py::arg("normalize") = true);

  m.def(
      "top_k",
      [](std::vector<double> scores, std::vector<ItemIndex> excluded, std::size_t k) {
        std::sort(excluded.begin(), excluded.end());
        return TopK(0, scores, excluded, k).items;
      },
      py::arg("scores"), py::arg("excluded") = std::vector<ItemIndex>{}, py::arg("k") = 10);

  py::class_<FactorModel>(m, "FactorModel")
      .def_readonly("user_factors", &FactorModel::user_factors)
      .def_readonly("item_factors", &FactorModel::item_factors)
      .def_readonly("item_bias", &FactorModel::item_bias)
      .def("scores", [](const FactorModel& model, UserIndex u) {
        const auto s = Scorer::FromFactors(Algorithm::kBpr, model);
        std::vector<double> out(s.num_items());
        s.ScoreUser(u, out);
        return out;
      });

  m.def("train_bpr", [](const InteractionSet& train, const py::kwargs& kw) {
    return TrainBpr(train, TrainKwargs(TrainConfig::BprDefaults(), kw)).model;
  });
  m.def("train_rank_als", [](const InteractionSet& train, const py::kwargs& kw) {
    return TrainRankAls(train, TrainKwargs(TrainConfig::RankAlsDefaults(), kw)).model;
  });

  m.def(
      "run_experiment",
      [](const py::dict& config) {
        const SweepResult result = RunExperiment(ConfigFromDict(config));
        py::list reports;
        for (const auto& r : result.reports) reports.append(ReportDict(r));
        return py::make_tuple(reports, MetricsCsv(result.reports));
      },
      py::arg("config"),
      "Run a sweep from a dict of configuration keys; returns (reports, metrics CSV text).");

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "longtail");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line interface in-process; returns (code, stdout, stderr).");

  m.attr("METRICS_CSV_HEADER") = kMetricsCsvHeader;
}
