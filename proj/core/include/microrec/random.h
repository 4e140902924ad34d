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

#ifndef MICROREC_RANDOM_H_
#define MICROREC_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace microrec {

// 64-bit FNV-1a. Stable across platforms and runs; used wherever a string
// has to be mapped to a number deterministically.
uint64_t fnv1a64(std::string_view data);

uint64_t splitmix64(uint64_t x);

// Counter-style seed derivation: the seed of a work item depends only on the
// master seed and the item's tag, never on scheduling order.
uint64_t derive_seed(uint64_t master, std::string_view tag);

// Random source with platform-independent variates. std::mt19937_64 output
// is fully specified by the standard; the distributions below are written out
// by hand because the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t uniform_int(uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  double normal();

  // Marsaglia-Tsang; shape > 0, unit scale.
  double gamma(double shape);

  double beta(double a, double b);

  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn proportionally to `weights` (nonnegative, positive total).
  std::size_t categorical(std::span<const double> weights);
  std::size_t categorical(std::span<const double> weights, double total);

  std::vector<double> dirichlet(std::span<const double> concentration);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace microrec

#endif  // MICROREC_RANDOM_H_
