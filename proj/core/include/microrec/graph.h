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

#ifndef MICROREC_GRAPH_H_
#define MICROREC_GRAPH_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "microrec/bag.h"

namespace microrec {

enum class GraphMeasure { kCoS, kVS, kNS };

// Undirected n-gram co-occurrence graph. Edge keys are canonically ordered
// (first < second); weights are positive co-occurrence counts and self loops
// never appear.
struct GraphModel {
  GramUnit unit = GramUnit::kToken;
  int n = 1;
  std::map<std::pair<std::string, std::string>, double> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
};

// Connects every pair of distinct n-grams whose positions are at most n apart
// (the window equals the n-gram size). Throws if n < 1.
GraphModel build_graph(std::span<const std::string> grams, GramUnit unit, int n);

// Adds `other` into `acc` (edge-set union, weights summed). Throws on
// unit/n mismatch.
void merge_into(GraphModel& acc, const GraphModel& other);

// Union of the edge sets with summed weights. An empty list yields an empty
// graph with n = 0.
GraphModel merge_graphs(std::span<const GraphModel> graphs);

// CoS = shared edges / min(|Gi|, |Gj|)
// VS  = sum over shared edges of min(w)/max(w), divided by max(|Gi|, |Gj|)
// NS  = the same sum divided by min(|Gi|, |Gj|)
// Empty operands score 0. Throws on unit/n mismatch.
double graph_similarity(const GraphModel& a, const GraphModel& b, GraphMeasure measure);

// Debug format: "gramA<TAB>gramB<TAB>weight" lines.
void write_graph_text(std::ostream& out, const GraphModel& graph);
GraphModel read_graph_text(std::istream& in, GramUnit unit, int n);

}  // namespace microrec

#endif  // MICROREC_GRAPH_H_
