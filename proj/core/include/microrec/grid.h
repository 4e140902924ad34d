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

#ifndef MICROREC_GRID_H_
#define MICROREC_GRID_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "microrec/config.h"

namespace microrec {

// Parameter ranges per model kind, kept as raw value strings. A file looks
// like:
//
//   # comment
//   models = TN, LDA
//   TN.n = 1, 2
//   LDA.alpha = 50/topics
//
// Keys are "models" or "<MODEL>.<param>"; values are comma separated.
// Numeric alpha values may be written "c/topics" for c divided by the
// topic count.
struct GridSpec {
  std::vector<ModelKind> models;
  std::map<ModelKind, std::map<std::string, std::vector<std::string>>> ranges;
};

// The nine evaluated model kinds with their default parameter ranges
// (223 configurations). PLSA ranges are present but PLSA is not listed in
// `models`.
GridSpec default_grid_spec();

// Parameter names accepted for a model kind, in expansion order.
const std::vector<std::string>& grid_parameters(ModelKind kind);

// Applies "key = v1, v2" lines on top of `base`. Throws
// std::invalid_argument with the line number on unknown models or
// parameter names and malformed lines.
GridSpec parse_grid_spec(std::istream& in, GridSpec base = default_grid_spec());
GridSpec load_grid_spec(const std::filesystem::path& path);
void write_grid_spec(std::ostream& out, const GridSpec& spec);

struct ConfigGrid {
  std::vector<ModelConfig> entries;
  std::map<ModelKind, std::size_t> counts;

  std::size_t size() const { return entries.size(); }
};

// Cartesian product of every listed model's ranges, minus invalid
// combinations.
ConfigGrid expand_grid(const GridSpec& spec);

}  // namespace microrec

#endif  // MICROREC_GRID_H_
