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
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

// Collapsed Gibbs sampler where document d may only use the topics listed in
// candidates[d]. Plain LDA passes the full topic range for every document.
TopicState gibbs(topics_detail::Encoded encoded, const std::vector<std::vector<int>>& candidates,
                 std::size_t num_topics, double alpha, double beta, int iterations,
                 uint64_t seed, const CancelFn& cancel) {
  const std::size_t num_docs = encoded.docs.size();
  const std::size_t vocab = encoded.vocab.size();
  const double vbeta = static_cast<double>(vocab) * beta;

  std::vector<std::vector<int>> n_dz(num_docs, std::vector<int>(num_topics, 0));
  std::vector<std::vector<int>> n_zw(num_topics, std::vector<int>(vocab, 0));
  std::vector<int> n_z(num_topics, 0);
  std::vector<std::vector<int>> z(num_docs);

  Rng rng(seed);
  for (std::size_t d = 0; d < num_docs; ++d) {
    const auto& cand = candidates[d];
    z[d].resize(encoded.docs[d].size());
    for (std::size_t i = 0; i < encoded.docs[d].size(); ++i) {
      const int topic = cand[static_cast<std::size_t>(rng.uniform_int(cand.size()))];
      const auto t = static_cast<std::size_t>(topic);
      const auto w = static_cast<std::size_t>(encoded.docs[d][i]);
      z[d][i] = topic;
      ++n_dz[d][t];
      ++n_zw[t][w];
      ++n_z[t];
    }
  }

  std::vector<double> weights;
  for (int it = 0; it < iterations; ++it) {
    if (cancel) cancel();
    for (std::size_t d = 0; d < num_docs; ++d) {
      const auto& cand = candidates[d];
      weights.resize(cand.size());
      for (std::size_t i = 0; i < encoded.docs[d].size(); ++i) {
        const auto w = static_cast<std::size_t>(encoded.docs[d][i]);
        auto t = static_cast<std::size_t>(z[d][i]);
        --n_dz[d][t];
        --n_zw[t][w];
        --n_z[t];
        double total = 0.0;
        for (std::size_t c = 0; c < cand.size(); ++c) {
          const auto k = static_cast<std::size_t>(cand[c]);
          const double p = (n_dz[d][k] + alpha) * (n_zw[k][w] + beta) / (n_z[k] + vbeta);
          weights[c] = p;
          total += p;
        }
        t = static_cast<std::size_t>(cand[rng.categorical(weights, total)]);
        z[d][i] = static_cast<int>(t);
        ++n_dz[d][t];
        ++n_zw[t][w];
        ++n_z[t];
      }
    }
  }

  TopicState state;
  state.theta.assign(num_docs, std::vector<double>(num_topics, 0.0));
  for (std::size_t d = 0; d < num_docs; ++d) {
    const double denom = static_cast<double>(encoded.docs[d].size()) +
                         static_cast<double>(candidates[d].size()) * alpha;
    for (int k : candidates[d]) {
      const auto t = static_cast<std::size_t>(k);
      state.theta[d][t] = (n_dz[d][t] + alpha) / denom;
    }
  }
  state.phi.assign(num_topics, std::vector<double>(vocab, 0.0));
  for (std::size_t k = 0; k < num_topics; ++k) {
    const double denom = n_z[k] + vbeta;
    for (std::size_t w = 0; w < vocab; ++w) state.phi[k][w] = (n_zw[k][w] + beta) / denom;
  }
  state.z = std::move(z);
  state.vocab = std::move(encoded.vocab);
  state.rng_seed = seed;
  state.hyper.alpha = alpha;
  state.hyper.beta = beta;
  state.hyper.iterations = iterations;
  return state;
}

void check_common(double alpha, double beta, int iterations) {
  topics_detail::check_positive(alpha, "alpha");
  topics_detail::check_positive(beta, "beta");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
}

}  // namespace

TopicState train_lda(const PooledCorpus& pooled, int num_topics, double alpha, double beta,
                     int iterations, uint64_t seed, const CancelFn& cancel) {
  if (num_topics < 1) throw std::invalid_argument("num_topics must be >= 1");
  check_common(alpha, beta, iterations);
  auto encoded = topics_detail::encode(pooled);
  std::vector<int> all(static_cast<std::size_t>(num_topics));
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> candidates(encoded.docs.size(), all);
  TopicState state = gibbs(std::move(encoded), candidates, all.size(), alpha, beta, iterations,
                           seed, cancel);
  state.family = TopicFamily::kLDA;
  state.hyper.num_topics = num_topics;
  for (int k = 0; k < num_topics; ++k) state.topic_names.push_back("Topic " + std::to_string(k));
  return state;
}

TopicState train_llda(const PooledCorpus& pooled, std::span<const std::set<std::string>> labels,
                      int num_latent_topics, double alpha, double beta, int iterations,
                      uint64_t seed, const CancelFn& cancel) {
  if (num_latent_topics < 0) throw std::invalid_argument("num_latent_topics must be >= 0");
  check_common(alpha, beta, iterations);
  if (labels.size() != pooled.docs.size()) {
    throw std::invalid_argument("train_llda: one label set per document required");
  }
  auto encoded = topics_detail::encode(pooled);

  std::set<std::string> catalogue;
  for (const auto& doc_labels : labels) catalogue.insert(doc_labels.begin(), doc_labels.end());
  std::vector<std::string> names;
  for (int k = 0; k < num_latent_topics; ++k) names.push_back("Topic " + std::to_string(k));
  std::map<std::string, int> label_index;
  for (const auto& label : catalogue) {
    label_index.emplace(label, static_cast<int>(names.size()));
    names.push_back(label);
  }

  std::vector<std::vector<int>> candidates(encoded.docs.size());
  for (std::size_t d = 0; d < candidates.size(); ++d) {
    for (int k = 0; k < num_latent_topics; ++k) candidates[d].push_back(k);
    for (const auto& label : labels[d]) candidates[d].push_back(label_index.at(label));
    if (candidates[d].empty()) {
      throw std::invalid_argument("train_llda: document " + std::to_string(d) +
                                  " has no candidate topics");
    }
  }
  TopicState state = gibbs(std::move(encoded), candidates, names.size(), alpha, beta,
                           iterations, seed, cancel);
  state.family = TopicFamily::kLLDA;
  state.hyper.num_topics = num_latent_topics;
  state.topic_names = std::move(names);
  return state;
}

}  // namespace microrec
