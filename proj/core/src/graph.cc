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

#include "microrec/graph.h"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace microrec {
namespace {

void check_compatible(const GraphModel& a, const GraphModel& b) {
  if (a.unit != b.unit || a.n != b.n) {
    throw std::invalid_argument("graph models differ in n-gram unit or size");
  }
}

}  // namespace

GraphModel build_graph(std::span<const std::string> grams, GramUnit unit, int n) {
  if (n < 1) throw std::invalid_argument("build_graph: n must be >= 1");
  GraphModel graph{unit, n, {}};
  const auto window = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < grams.size(); ++i) {
    for (std::size_t j = i + 1; j < grams.size() && j - i <= window; ++j) {
      if (grams[i] == grams[j]) continue;
      auto key = grams[i] < grams[j] ? std::make_pair(grams[i], grams[j])
                                     : std::make_pair(grams[j], grams[i]);
      graph.edges[std::move(key)] += 1.0;
    }
  }
  return graph;
}

void merge_into(GraphModel& acc, const GraphModel& other) {
  check_compatible(acc, other);
  for (const auto& [edge, w] : other.edges) acc.edges[edge] += w;
}

GraphModel merge_graphs(std::span<const GraphModel> graphs) {
  if (graphs.empty()) return GraphModel{GramUnit::kToken, 0, {}};
  GraphModel merged{graphs.front().unit, graphs.front().n, {}};
  for (const auto& g : graphs) merge_into(merged, g);
  return merged;
}

double graph_similarity(const GraphModel& a, const GraphModel& b, GraphMeasure measure) {
  check_compatible(a, b);
  if (a.empty() || b.empty()) return 0.0;
  const GraphModel& small = a.size() <= b.size() ? a : b;
  const GraphModel& large = a.size() <= b.size() ? b : a;
  double shared = 0.0;
  double value_ratio = 0.0;
  for (const auto& [edge, w] : small.edges) {
    auto it = large.edges.find(edge);
    if (it == large.edges.end()) continue;
    shared += 1.0;
    value_ratio += std::min(w, it->second) / std::max(w, it->second);
  }
  const auto min_size = static_cast<double>(small.size());
  const auto max_size = static_cast<double>(large.size());
  switch (measure) {
    case GraphMeasure::kCoS: return shared / min_size;
    case GraphMeasure::kVS: return value_ratio / max_size;
    case GraphMeasure::kNS: return value_ratio / min_size;
  }
  return 0.0;
}

void write_graph_text(std::ostream& out, const GraphModel& graph) {
  char buf[32];
  for (const auto& [edge, w] : graph.edges) {
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out << escape_gram(edge.first) << '\t' << escape_gram(edge.second) << '\t' << buf << '\n';
  }
}

GraphModel read_graph_text(std::istream& in, GramUnit unit, int n) {
  GraphModel graph{unit, n, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto first = line.find('\t');
    const auto last = line.rfind('\t');
    if (first == std::string::npos || first == last) {
      throw std::runtime_error("graph text: expected 'gramA<TAB>gramB<TAB>weight'");
    }
    std::string a = unescape_gram(line.substr(0, first));
    std::string b = unescape_gram(line.substr(first + 1, last - first - 1));
    const double w = std::stod(line.substr(last + 1));
    if (a == b || !(w > 0.0)) continue;
    if (b < a) std::swap(a, b);
    graph.edges[{std::move(a), std::move(b)}] += w;
  }
  return graph;
}

}  // namespace microrec
