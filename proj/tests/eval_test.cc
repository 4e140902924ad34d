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

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "microrec/eval.h"
#include "microrec/random.h"
#include "test_util.h"

namespace microrec {
namespace {

double ap(std::vector<bool> r) {
  const std::unique_ptr<bool[]> buf(new bool[r.size()]);
  for (std::size_t i = 0; i < r.size(); ++i) buf[i] = r[i];
  return average_precision(std::span<const bool>(buf.get(), r.size()));
}

TEST(AveragePrecision, Examples) {
  EXPECT_NEAR(ap({true, false, true, false, false}), 0.5 * (1.0 + 2.0 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(ap({true, true, false}), 1.0);
  EXPECT_NEAR(ap({false, false, true}), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(ap({false, false}), std::invalid_argument);
  EXPECT_THROW(ap({}), std::invalid_argument);
}

TEST(AveragePrecision, RankedListOverload) {
  RankedList list;
  list.entries.push_back({"a", 0, 1.0, false});
  list.entries.push_back({"b", 0, 0.5, true});
  EXPECT_DOUBLE_EQ(average_precision(list), 0.5);
}

std::vector<bool> random_relevance(Rng& rng, std::size_t max_len) {
  std::vector<bool> r(1 + rng.uniform_int(max_len));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rng.bernoulli(0.3);
  r[rng.uniform_int(r.size())] = true;
  return r;
}

TEST(AveragePrecisionProperty, MatchesBruteForce) {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = random_relevance(rng, 20);
    EXPECT_NEAR(ap(r), testing::brute_force_ap(r), 1e-12);
  }
}

TEST(AveragePrecisionProperty, BoundsAndPerfectOrdering) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    auto r = random_relevance(rng, 20);
    const double v = ap(r);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
    const bool perfect = std::is_sorted(r.begin(), r.end(), std::greater<>());
    EXPECT_EQ(v == 1.0, perfect);
    std::sort(r.begin(), r.end(), std::greater<>());
    EXPECT_DOUBLE_EQ(ap(r), 1.0);
  }
}

TEST(AveragePrecisionProperty, PromotingRelevantItemIncreases) {
  Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    auto r = random_relevance(rng, 20);
    std::vector<std::size_t> swaps;
    for (std::size_t i = 1; i < r.size(); ++i) {
      if (r[i] && !r[i - 1]) swaps.push_back(i);
    }
    if (swaps.empty()) continue;
    const std::size_t i = swaps[rng.uniform_int(swaps.size())];
    const double before = ap(r);
    std::swap(r[i], r[i - 1]);
    EXPECT_GT(ap(r), before);
  }
}

TEST(MeanAveragePrecision, Examples) {
  const std::vector<double> a{1.0, 0.5}, b{0.7}, c{0.2, 0.4, 0.9};
  EXPECT_DOUBLE_EQ(mean_average_precision(a), 0.75);
  EXPECT_DOUBLE_EQ(mean_average_precision(b), 0.7);
  EXPECT_NEAR(mean_average_precision(c), 0.5, 1e-15);
  EXPECT_THROW(mean_average_precision({}), std::invalid_argument);
}

TEST(MapDeviation, Examples) {
  const std::vector<double> a{0.3, 0.7, 0.5}, b{0.42};
  EXPECT_NEAR(map_deviation(a), 0.4, 1e-15);
  EXPECT_EQ(map_deviation(b), 0.0);
  EXPECT_THROW(map_deviation({}), std::invalid_argument);
}

TEST(MapDeviation, PermutationInvariantAndNonNegative) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + rng.uniform_int(10));
    for (double& x : v) x = rng.uniform();
    const double d = map_deviation(v);
    EXPECT_GE(d, 0.0);
    rng.shuffle(v);
    EXPECT_EQ(map_deviation(v), d);
  }
}

TEST(Timing, SectionsAccumulate) {
  TimingAccumulator acc;
  acc.add(Section::kTrain, std::chrono::milliseconds(3));
  acc.add(Section::kTrain, std::chrono::milliseconds(4));
  EXPECT_EQ(acc.ttime_ms(), 7);
  EXPECT_EQ(acc.etime_ms(), 0);
  TimingAccumulator other;
  other.add(Section::kTest, std::chrono::milliseconds(2));
  acc.merge(other);
  EXPECT_EQ(acc.etime_ms(), 2);
}

TEST(Timing, TimedChargesWallClock) {
  TimingAccumulator acc;
  const int v = timed(Section::kTest, acc, [] {
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    return 11;
  });
  EXPECT_EQ(v, 11);
  EXPECT_GE(acc.etime_ms(), 5);
  EXPECT_EQ(acc.ttime_ms(), 0);
  timed(Section::kTrain, acc, [] {});
  EXPECT_GE(acc.train().count(), 0);
}

TEST(ExpectedRandomAp, OracleSanity) {
  // One relevant among N: E[AP] = H_N / N.
  for (int n = 1; n < 12; ++n) {
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    EXPECT_NEAR(testing::expected_random_ap(1, n), h / n, 1e-12);
  }
  EXPECT_NEAR(testing::expected_random_ap(5, 5), 1.0, 1e-12);
  // Exhaustive check over all placements of 2 relevant among 5.
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      std::vector<bool> r(5, false);
      r[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(j)] = true;
      sum += testing::brute_force_ap(r);
      ++count;
    }
  }
  EXPECT_NEAR(testing::expected_random_ap(2, 5), sum / count, 1e-12);
}

}  // namespace
}  // namespace microrec
