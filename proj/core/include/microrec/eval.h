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

#ifndef MICROREC_EVAL_H_
#define MICROREC_EVAL_H_

#include <chrono>
#include <cstdint>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "microrec/recommend.h"

namespace microrec {

// Mean of P@n over the positions n of relevant items. Throws
// std::invalid_argument("no relevant items") when nothing is relevant.
double average_precision(std::span<const bool> relevance);
double average_precision(const RankedList& ranked);

// Throws on an empty list.
double mean_average_precision(std::span<const double> aps);

// max - min. Throws on an empty list.
double map_deviation(std::span<const double> maps);

enum class Section { kTrain, kTest };

// Wall-clock buckets for one run, kept in nanoseconds of a monotonic clock.
class TimingAccumulator {
 public:
  void add(Section section, std::chrono::nanoseconds elapsed);
  void merge(const TimingAccumulator& other);

  std::chrono::nanoseconds train() const { return train_; }
  std::chrono::nanoseconds test() const { return test_; }
  int64_t ttime_ms() const;
  int64_t etime_ms() const;

 private:
  std::chrono::nanoseconds train_{0};
  std::chrono::nanoseconds test_{0};
};

// Runs `thunk`, charging its wall-clock time to `section`.
template <typename F>
auto timed(Section section, TimingAccumulator& acc, F&& thunk) {
  const auto start = std::chrono::steady_clock::now();
  if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
    std::forward<F>(thunk)();
    acc.add(section, std::chrono::steady_clock::now() - start);
  } else {
    auto result = std::forward<F>(thunk)();
    acc.add(section, std::chrono::steady_clock::now() - start);
    return result;
  }
}

}  // namespace microrec

#endif  // MICROREC_EVAL_H_
