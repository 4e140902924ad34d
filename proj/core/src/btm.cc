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

#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {

TopicState train_btm(const PooledCorpus& pooled, int num_topics, double alpha, double beta,
                     int window_r, int iterations, uint64_t seed, const CancelFn& cancel) {
  if (num_topics < 1) throw std::invalid_argument("num_topics must be >= 1");
  topics_detail::check_positive(alpha, "alpha");
  topics_detail::check_positive(beta, "beta");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  auto encoded = topics_detail::encode(pooled);

  std::vector<std::pair<int, int>> biterms;
  for (const auto& doc : encoded.docs) {
    auto found = extract_biterms<int>(doc, window_r);
    biterms.insert(biterms.end(), found.begin(), found.end());
  }
  if (biterms.empty()) throw std::invalid_argument("no biterms");

  const auto k = static_cast<std::size_t>(num_topics);
  const std::size_t vocab = encoded.vocab.size();
  const double vbeta = static_cast<double>(vocab) * beta;
  std::vector<int> n_z(k, 0);
  std::vector<std::vector<int>> n_zw(k, std::vector<int>(vocab, 0));
  std::vector<int> z(biterms.size());

  auto add = [&](std::size_t b, std::size_t t, int delta) {
    n_z[t] += delta;
    n_zw[t][static_cast<std::size_t>(biterms[b].first)] += delta;
    n_zw[t][static_cast<std::size_t>(biterms[b].second)] += delta;
  };

  Rng rng(seed);
  for (std::size_t b = 0; b < biterms.size(); ++b) {
    const auto t = static_cast<std::size_t>(rng.uniform_int(k));
    z[b] = static_cast<int>(t);
    add(b, t, 1);
  }

  std::vector<double> weights(k);
  for (int it = 0; it < iterations; ++it) {
    if (cancel) cancel();
    for (std::size_t b = 0; b < biterms.size(); ++b) {
      add(b, static_cast<std::size_t>(z[b]), -1);
      const auto w1 = static_cast<std::size_t>(biterms[b].first);
      const auto w2 = static_cast<std::size_t>(biterms[b].second);
      const double same = w1 == w2 ? 1.0 : 0.0;
      double total = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        const double twice = 2.0 * n_z[t];
        const double p = (n_z[t] + alpha) * (n_zw[t][w1] + beta) * (n_zw[t][w2] + beta + same) /
                         ((twice + vbeta) * (twice + 1.0 + vbeta));
        weights[t] = p;
        total += p;
      }
      const std::size_t t = rng.categorical(weights, total);
      z[b] = static_cast<int>(t);
      add(b, t, 1);
    }
  }

  TopicState state;
  state.family = TopicFamily::kBTM;
  state.hyper.num_topics = num_topics;
  state.hyper.alpha = alpha;
  state.hyper.beta = beta;
  state.hyper.window_r = window_r;
  state.hyper.iterations = iterations;
  state.rng_seed = seed;
  const double denom = static_cast<double>(biterms.size()) + static_cast<double>(k) * alpha;
  state.theta.emplace_back(k);
  state.phi.assign(k, std::vector<double>(vocab));
  for (std::size_t t = 0; t < k; ++t) {
    state.theta[0][t] = (n_z[t] + alpha) / denom;
    const double pd = 2.0 * n_z[t] + vbeta;
    for (std::size_t w = 0; w < vocab; ++w) state.phi[t][w] = (n_zw[t][w] + beta) / pd;
    state.topic_names.push_back("Topic " + std::to_string(t));
  }
  state.z.push_back(std::move(z));
  state.vocab = std::move(encoded.vocab);
  return state;
}

}  // namespace microrec
