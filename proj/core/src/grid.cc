/*
 * Copyright 2026 The microrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "microrec/grid.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace microrec {
namespace {

using Ranges = std::map<std::string, std::vector<std::string>>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_values(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = s.find(',');
    std::string item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double parse_number(const std::string& value) {
  std::size_t used = 0;
  const double v = std::stod(value, &used);
  if (used != value.size()) throw std::invalid_argument("bad number '" + value + "'");
  return v;
}

int parse_int(const std::string& value) {
  std::size_t used = 0;
  const int v = std::stoi(value, &used);
  if (used != value.size()) throw std::invalid_argument("bad integer '" + value + "'");
  return v;
}

void apply(ModelConfig& c, const std::string& param, const std::string& value) {
  if (param == "n") c.n = parse_int(value);
  else if (param == "weighting") c.weighting = parse_weighting(value);
  else if (param == "aggregation") c.aggregation = parse_aggregation(value);
  else if (param == "similarity") c.similarity = parse_similarity(value);
  else if (param == "pooling") c.pooling = parse_pooling(value);
  else if (param == "topics") c.topics = parse_int(value);
  else if (param == "alpha") {
    const auto slash = value.find('/');
    if (slash == std::string::npos) {
      c.alpha = parse_number(value);
    } else {
      if (trim(value.substr(slash + 1)) != "topics") {
        throw std::invalid_argument("alpha ratio must be written 'c/topics'");
      }
      if (c.topics < 1) throw std::invalid_argument("alpha 'c/topics' needs topics >= 1");
      c.alpha = parse_number(trim(value.substr(0, slash))) / c.topics;
    }
  } else if (param == "beta") c.beta = parse_number(value);
  else if (param == "gamma") c.gamma = parse_number(value);
  else if (param == "iterations") c.iterations = parse_int(value);
  else if (param == "levels") c.levels = parse_int(value);
  else throw std::invalid_argument("unknown parameter '" + param + "'");
}

Ranges bag_defaults(std::vector<std::string> n, std::vector<std::string> weighting) {
  return {{"n", std::move(n)},
          {"weighting", std::move(weighting)},
          {"aggregation", {"sum", "centroid", "rocchio"}},
          {"similarity", {"CS", "JS", "GJS"}}};
}

Ranges topic_defaults(std::vector<std::string> iterations) {
  return {{"pooling", {"NP", "UP", "HP"}},
          {"topics", {"50", "100", "150", "200"}},
          {"alpha", {"50/topics"}},
          {"beta", {"0.01"}},
          {"iterations", std::move(iterations)},
          {"aggregation", {"centroid", "rocchio"}},
          {"similarity", {"CS"}}};
}

}  // namespace

const std::vector<std::string>& grid_parameters(ModelKind kind) {
  static const std::vector<std::string> bag{"n", "weighting", "aggregation", "similarity"};
  static const std::vector<std::string> graph{"n", "similarity"};
  static const std::vector<std::string> plsa{"pooling", "topics", "iterations", "aggregation",
                                             "similarity"};
  static const std::vector<std::string> flat{"pooling", "topics",     "alpha",      "beta",
                                             "iterations", "aggregation", "similarity"};
  static const std::vector<std::string> hdp{"pooling",    "alpha",       "beta",      "gamma",
                                            "iterations", "aggregation", "similarity"};
  static const std::vector<std::string> hlda{"pooling",    "levels",      "alpha",     "beta",
                                             "gamma",      "iterations",  "aggregation",
                                             "similarity"};
  switch (kind) {
    case ModelKind::kTN:
    case ModelKind::kCN: return bag;
    case ModelKind::kTNG:
    case ModelKind::kCNG: return graph;
    case ModelKind::kPLSA: return plsa;
    case ModelKind::kLDA:
    case ModelKind::kLLDA:
    case ModelKind::kBTM: return flat;
    case ModelKind::kHDP: return hdp;
    case ModelKind::kHLDA: return hlda;
  }
  return bag;
}

GridSpec default_grid_spec() {
  GridSpec spec;
  spec.models = {ModelKind::kTN,  ModelKind::kCN,   ModelKind::kTNG,
                 ModelKind::kCNG, ModelKind::kLDA,  ModelKind::kLLDA,
                 ModelKind::kBTM, ModelKind::kHDP,  ModelKind::kHLDA};
  auto& r = spec.ranges;
  r[ModelKind::kTN] = bag_defaults({"1", "2", "3"}, {"BF", "TF", "TF-IDF"});
  r[ModelKind::kCN] = bag_defaults({"2", "3", "4"}, {"BF", "TF"});
  r[ModelKind::kTNG] = {{"n", {"1", "2", "3"}}, {"similarity", {"CoS", "VS", "NS"}}};
  r[ModelKind::kCNG] = {{"n", {"2", "3", "4"}}, {"similarity", {"CoS", "VS", "NS"}}};
  r[ModelKind::kLDA] = topic_defaults({"1000", "2000"});
  r[ModelKind::kLLDA] = topic_defaults({"1000", "2000"});
  r[ModelKind::kBTM] = topic_defaults({"1000"});
  r[ModelKind::kPLSA] = {{"pooling", {"NP", "UP", "HP"}},
                         {"topics", {"50", "100", "150", "200"}},
                         {"iterations", {"1000"}},
                         {"aggregation", {"centroid", "rocchio"}},
                         {"similarity", {"CS"}}};
  r[ModelKind::kHDP] = {{"pooling", {"NP", "UP", "HP"}},
                        {"alpha", {"1.0"}},
                        {"beta", {"0.1", "0.5"}},
                        {"gamma", {"1.0"}},
                        {"iterations", {"1000"}},
                        {"aggregation", {"centroid", "rocchio"}},
                        {"similarity", {"CS"}}};
  r[ModelKind::kHLDA] = {{"pooling", {"UP"}},
                         {"levels", {"3"}},
                         {"alpha", {"10", "20"}},
                         {"beta", {"0.1", "0.5"}},
                         {"gamma", {"0.5", "1.0"}},
                         {"iterations", {"1000"}},
                         {"aggregation", {"centroid", "rocchio"}},
                         {"similarity", {"CS"}}};
  return spec;
}

GridSpec parse_grid_spec(std::istream& in, GridSpec base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("grid line " + std::to_string(line_no) + ": " + what);
    };
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected 'key = values'");
    const std::string key = trim(text.substr(0, eq));
    auto values = split_values(text.substr(eq + 1));
    if (values.empty()) fail("no values for '" + key + "'");
    if (key == "models") {
      base.models.clear();
      try {
        for (const auto& v : values) base.models.push_back(parse_model_kind(v));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      continue;
    }
    const auto dot = key.find('.');
    if (dot == std::string::npos) fail("unknown key '" + key + "'");
    ModelKind kind{};
    try {
      kind = parse_model_kind(key.substr(0, dot));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    const std::string param = key.substr(dot + 1);
    const auto& allowed = grid_parameters(kind);
    if (std::find(allowed.begin(), allowed.end(), param) == allowed.end()) {
      fail("unknown parameter '" + param + "' for " + std::string(model_kind_name(kind)));
    }
    base.ranges[kind][param] = std::move(values);
  }
  return base;
}

GridSpec load_grid_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grid file " + path.string());
  return parse_grid_spec(in);
}

void write_grid_spec(std::ostream& out, const GridSpec& spec) {
  out << "models =";
  for (std::size_t i = 0; i < spec.models.size(); ++i) {
    out << (i ? ", " : " ") << model_kind_name(spec.models[i]);
  }
  out << '\n';
  for (ModelKind kind : spec.models) {
    auto it = spec.ranges.find(kind);
    if (it == spec.ranges.end()) continue;
    for (const auto& param : grid_parameters(kind)) {
      auto values = it->second.find(param);
      if (values == it->second.end()) continue;
      out << model_kind_name(kind) << '.' << param << " =";
      for (std::size_t i = 0; i < values->second.size(); ++i) {
        out << (i ? ", " : " ") << values->second[i];
      }
      out << '\n';
    }
  }
}

ConfigGrid expand_grid(const GridSpec& spec) {
  ConfigGrid grid;
  for (ModelKind kind : spec.models) {
    auto it = spec.ranges.find(kind);
    if (it == spec.ranges.end()) {
      throw std::invalid_argument("no parameter ranges for " + std::string(model_kind_name(kind)));
    }
    const Ranges& ranges = it->second;
    for (const auto& [param, values] : ranges) {
      const auto& allowed = grid_parameters(kind);
      if (std::find(allowed.begin(), allowed.end(), param) == allowed.end()) {
        throw std::invalid_argument("unknown parameter '" + param + "' for " +
                                    std::string(model_kind_name(kind)));
      }
    }
    std::vector<std::pair<std::string, const std::vector<std::string>*>> axes;
    for (const auto& param : grid_parameters(kind)) {
      auto r = ranges.find(param);
      if (r == ranges.end() || r->second.empty()) {
        throw std::invalid_argument(std::string(model_kind_name(kind)) + " is missing '" +
                                    param + "'");
      }
      axes.emplace_back(param, &r->second);
    }
    std::size_t& count = grid.counts[kind];
    // Odometer over the axes; the last axis varies fastest.
    std::vector<std::size_t> index(axes.size(), 0);
    bool more = true;
    while (more) {
      ModelConfig c;
      c.kind = kind;
      if (kind == ModelKind::kHLDA) c.levels = kHldaLevels;
      for (std::size_t a = 0; a < axes.size(); ++a) apply(c, axes[a].first, (*axes[a].second)[index[a]]);
      if (config_valid(c)) {
        grid.entries.push_back(c);
        ++count;
      }
      more = false;
      for (std::size_t a = axes.size(); a-- > 0;) {
        if (++index[a] < axes[a].second->size()) {
          more = true;
          break;
        }
        index[a] = 0;
      }
    }
  }
  return grid;
}

}  // namespace microrec
