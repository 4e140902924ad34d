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

#ifndef MICROREC_TESTS_TEST_UTIL_H_
#define MICROREC_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "microrec/corpus.h"
#include "microrec/pooling.h"
#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec::testing {

inline Tweet make_tweet(std::string id, std::string author, int64_t ts, std::string text,
                        std::optional<UserId> retweet_of = std::nullopt) {
  Tweet t;
  t.id = std::move(id);
  t.author = std::move(author);
  t.timestamp = ts;
  t.text = std::move(text);
  t.retweet_of = std::move(retweet_of);
  return t;
}

// Precision-at-n summation written straight from the definition.
inline double brute_force_ap(const std::vector<bool>& relevance) {
  double total_relevant = 0;
  for (bool r : relevance) total_relevant += r;
  double sum = 0.0;
  for (std::size_t n = 1; n <= relevance.size(); ++n) {
    if (!relevance[n - 1]) continue;
    double hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += relevance[i];
    sum += hits / static_cast<double>(n);
  }
  return sum / total_relevant;
}

inline double log_choose(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Expected AP of a uniformly random ranking of R relevant among N items: the
// k-th relevant item sits at position n with hypergeometric probability
// C(n-1,k-1) C(N-n,R-k) / C(N,R) and contributes k/n.
inline double expected_random_ap(int relevant, int total) {
  double sum = 0.0;
  const double denom = log_choose(total, relevant);
  for (int k = 1; k <= relevant; ++k) {
    for (int n = k; n <= total - relevant + k; ++n) {
      const double p =
          std::exp(log_choose(n - 1, k - 1) + log_choose(total - n, relevant - k) - denom);
      sum += p * k / n;
    }
  }
  return sum / relevant;
}

// Documents drawn from K topics with disjoint vocabularies. Each document is
// generated from one topic chosen uniformly.
struct PlantedCorpus {
  PooledCorpus pooled;
  std::vector<std::string> vocabulary;
  std::vector<std::vector<double>> phi;  // over `vocabulary`
  std::vector<int> doc_topic;
};

inline PlantedCorpus planted_corpus(uint64_t seed, int topics, int words_per_topic, int docs,
                                    int tokens_per_doc) {
  Rng rng(seed);
  PlantedCorpus out;
  out.pooled.scheme = Pooling::kNP;
  const std::size_t vocab = static_cast<std::size_t>(topics * words_per_topic);
  for (int k = 0; k < topics; ++k) {
    for (int w = 0; w < words_per_topic; ++w) {
      out.vocabulary.push_back("t" + std::to_string(k) + "w" + std::to_string(w));
    }
  }
  for (int k = 0; k < topics; ++k) {
    std::vector<double> ones(static_cast<std::size_t>(words_per_topic), 1.0);
    const auto local = rng.dirichlet(ones);
    std::vector<double> row(vocab, 0.0);
    for (int w = 0; w < words_per_topic; ++w) {
      row[static_cast<std::size_t>(k * words_per_topic + w)] = local[static_cast<std::size_t>(w)];
    }
    out.phi.push_back(std::move(row));
  }
  for (int d = 0; d < docs; ++d) {
    const int k = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(topics)));
    std::vector<std::string> doc;
    for (int i = 0; i < tokens_per_doc; ++i) {
      doc.push_back(out.vocabulary[rng.categorical(out.phi[static_cast<std::size_t>(k)])]);
    }
    out.pooled.docs.push_back(std::move(doc));
    out.pooled.provenance.push_back({"d" + std::to_string(d)});
    out.doc_topic.push_back(k);
  }
  return out;
}

// phi row of a trained state re-indexed onto `vocabulary`.
inline std::vector<double> phi_on(const TopicState& state, std::size_t topic,
                                  const std::vector<std::string>& vocabulary) {
  std::vector<double> row;
  for (const auto& w : vocabulary) {
    const int id = state.vocab.find(w);
    row.push_back(id < 0 ? 0.0 : state.phi[topic][static_cast<std::size_t>(id)]);
  }
  return row;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

// Worst matched distance under the best one-to-one assignment of true topics
// to trained topics (exhaustive over permutations; fine for small K).
inline double matched_tv(const TopicState& state, const PlantedCorpus& planted) {
  const std::size_t k = planted.phi.size();
  std::vector<std::size_t> perm(state.num_topics());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t t = 0; t < k; ++t) {
      worst = std::max(worst, total_variation(planted.phi[t],
                                              phi_on(state, perm[t], planted.vocabulary)));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double row_sum(const std::vector<double>& row) {
  return std::accumulate(row.begin(), row.end(), 0.0);
}

}  // namespace microrec::testing

#endif  // MICROREC_TESTS_TEST_UTIL_H_
