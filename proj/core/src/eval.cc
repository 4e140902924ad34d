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

#include "microrec/eval.h"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace microrec {

double average_precision(std::span<const bool> relevance) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t n = 0; n < relevance.size(); ++n) {
    if (!relevance[n]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(n + 1);
  }
  if (hits == 0) throw std::invalid_argument("no relevant items");
  return sum / static_cast<double>(hits);
}

double average_precision(const RankedList& ranked) {
  const std::size_t n = ranked.entries.size();
  auto flags = std::make_unique<bool[]>(n);
  for (std::size_t i = 0; i < n; ++i) flags[i] = ranked.entries[i].relevant;
  return average_precision(std::span<const bool>(flags.get(), n));
}

double mean_average_precision(std::span<const double> aps) {
  if (aps.empty()) throw std::invalid_argument("mean of an empty AP list");
  double sum = 0.0;
  for (double ap : aps) sum += ap;
  return sum / static_cast<double>(aps.size());
}

double map_deviation(std::span<const double> maps) {
  if (maps.empty()) throw std::invalid_argument("deviation of an empty MAP list");
  const auto [lo, hi] = std::minmax_element(maps.begin(), maps.end());
  return *hi - *lo;
}

void TimingAccumulator::add(Section section, std::chrono::nanoseconds elapsed) {
  (section == Section::kTrain ? train_ : test_) += elapsed;
}

void TimingAccumulator::merge(const TimingAccumulator& other) {
  train_ += other.train_;
  test_ += other.test_;
}

int64_t TimingAccumulator::ttime_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(train_).count();
}

int64_t TimingAccumulator::etime_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(test_).count();
}

}  // namespace microrec
