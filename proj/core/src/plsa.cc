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

#include <cmath>
#include <map>
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

struct Cell {
  int word;
  double count;
};

void normalize(std::vector<double>& row) {
  double total = 0.0;
  for (double v : row) total += v;
  for (double& v : row) v /= total;
}

double log_likelihood(const std::vector<std::vector<Cell>>& cells,
                      const std::vector<std::vector<double>>& theta,
                      const std::vector<std::vector<double>>& phi) {
  double ll = 0.0;
  const std::size_t k = phi.size();
  for (std::size_t d = 0; d < cells.size(); ++d) {
    for (const Cell& c : cells[d]) {
      double p = 0.0;
      for (std::size_t z = 0; z < k; ++z) p += theta[d][z] * phi[z][static_cast<std::size_t>(c.word)];
      ll += c.count * std::log(p);
    }
  }
  return ll;
}

}  // namespace

TopicState train_plsa(const PooledCorpus& pooled, int num_topics, int iterations,
                      uint64_t seed, const CancelFn& cancel) {
  if (num_topics < 1) throw std::invalid_argument("num_topics must be >= 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  auto encoded = topics_detail::encode(pooled);
  const std::size_t num_docs = encoded.docs.size();
  const std::size_t vocab = encoded.vocab.size();
  const auto k = static_cast<std::size_t>(num_topics);

  // Sparse document-word counts.
  std::vector<std::vector<Cell>> cells(num_docs);
  for (std::size_t d = 0; d < num_docs; ++d) {
    std::map<int, double> counts;
    for (int w : encoded.docs[d]) counts[w] += 1.0;
    for (const auto& [w, c] : counts) cells[d].push_back({w, c});
  }

  Rng rng(seed);
  std::vector<std::vector<double>> theta(num_docs, std::vector<double>(k));
  std::vector<std::vector<double>> phi(k, std::vector<double>(vocab));
  for (auto& row : theta) {
    for (double& v : row) v = 0.5 + rng.uniform();
    normalize(row);
  }
  for (auto& row : phi) {
    for (double& v : row) v = 0.5 + rng.uniform();
    normalize(row);
  }

  TopicState state;
  std::vector<double> posterior(k);
  std::vector<std::vector<double>> phi_acc(k, std::vector<double>(vocab));
  for (int it = 0; it < iterations; ++it) {
    if (cancel) cancel();
    for (auto& row : phi_acc) std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t d = 0; d < num_docs; ++d) {
      std::vector<double> theta_acc(k, 0.0);
      for (const Cell& c : cells[d]) {
        const auto w = static_cast<std::size_t>(c.word);
        double total = 0.0;
        for (std::size_t z = 0; z < k; ++z) {
          posterior[z] = theta[d][z] * phi[z][w];
          total += posterior[z];
        }
        for (std::size_t z = 0; z < k; ++z) {
          const double r = c.count * posterior[z] / total;
          theta_acc[z] += r;
          phi_acc[z][w] += r;
        }
      }
      // Documents without tokens keep their current mixture.
      if (!cells[d].empty()) {
        theta[d] = std::move(theta_acc);
        normalize(theta[d]);
      }
    }
    for (std::size_t z = 0; z < k; ++z) {
      double total = 0.0;
      for (double v : phi_acc[z]) total += v;
      // A topic that lost all responsibility keeps its previous distribution.
      if (total > 0.0) {
        for (std::size_t w = 0; w < vocab; ++w) phi[z][w] = phi_acc[z][w] / total;
      }
    }
    state.log_likelihood.push_back(log_likelihood(cells, theta, phi));
  }

  state.family = TopicFamily::kPLSA;
  state.hyper.num_topics = num_topics;
  state.hyper.iterations = iterations;
  state.rng_seed = seed;
  state.vocab = std::move(encoded.vocab);
  for (int z = 0; z < num_topics; ++z) state.topic_names.push_back("Topic " + std::to_string(z));
  state.theta = std::move(theta);
  state.phi = std::move(phi);
  return state;
}

}  // namespace microrec
