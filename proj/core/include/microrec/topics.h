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

#ifndef MICROREC_TOPICS_H_
#define MICROREC_TOPICS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "microrec/pooling.h"

namespace microrec {

enum class TopicFamily { kPLSA, kLDA, kLLDA, kHDP, kHLDA, kBTM };

std::string_view topic_family_name(TopicFamily family);
TopicFamily parse_topic_family(std::string_view name);

struct TopicHyper {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Number of topics (latent topics for LLDA); unused by HDP and HLDA.
  int num_topics = 0;
  // Tree depth for HLDA.
  int levels = 0;
  int iterations = 0;
  // Biterm window for BTM; kWholeDocument for all pairs.
  int window_r = kWholeDocument;
};

class Vocabulary {
 public:
  // Returns the id of `word`, adding it if new.
  int add(const std::string& word);
  // -1 when absent.
  int find(const std::string& word) const;
  const std::string& word(int id) const { return words_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
};

// Trained model. theta has one row per pooled training document (BTM keeps a
// single corpus-level row); phi has one dense row per topic over the
// vocabulary. Rows are probability distributions.
struct TopicState {
  TopicFamily family = TopicFamily::kLDA;
  TopicHyper hyper;
  uint64_t rng_seed = 0;
  Vocabulary vocab;
  std::vector<std::string> topic_names;
  std::vector<std::vector<double>> theta;
  std::vector<std::vector<double>> phi;

  // Latent variables of the final sample. z holds per-token topics (levels
  // for HLDA, per-biterm topics for BTM as a single row).
  std::vector<std::vector<int>> z;
  // HDP: number of tables serving each topic.
  std::vector<int> table_counts;
  // HLDA: tree over topic indices. Nodes are in breadth-first order, the root
  // is node 0 and parent[0] = -1. paths[d] lists the node of document d at
  // every level.
  std::vector<int> tree_parent;
  std::vector<int> tree_level;
  std::vector<int> tree_docs;
  std::vector<std::vector<int>> paths;
  // PLSA: log-likelihood after every EM iteration.
  std::vector<double> log_likelihood;

  std::size_t num_topics() const { return phi.size(); }
};

// Invoked once per sweep; a guard aborts training by throwing.
using CancelFn = std::function<void()>;

// Throw std::invalid_argument("empty corpus") when there are no documents and
// "empty vocabulary" when there are no tokens.
TopicState train_plsa(const PooledCorpus& pooled, int num_topics, int iterations,
                      uint64_t seed, const CancelFn& cancel = {});

TopicState train_lda(const PooledCorpus& pooled, int num_topics, double alpha, double beta,
                     int iterations, uint64_t seed, const CancelFn& cancel = {});

// Topics 0..num_latent_topics-1 are latent ("Topic k"); the observed labels
// follow in sorted order. Each document samples only from its own labels and
// the latent topics. With no labels the sampler trajectory equals train_lda.
TopicState train_llda(const PooledCorpus& pooled, std::span<const std::set<std::string>> labels,
                      int num_latent_topics, double alpha, double beta, int iterations,
                      uint64_t seed, const CancelFn& cancel = {});

TopicState train_hdp(const PooledCorpus& pooled, double alpha, double gamma, double beta,
                     int iterations, uint64_t seed, const CancelFn& cancel = {});

TopicState train_hlda(const PooledCorpus& pooled, int levels, double alpha, double beta,
                      double gamma, int iterations, uint64_t seed,
                      const CancelFn& cancel = {});

// Throws std::invalid_argument("no biterms") when every document has fewer
// than two tokens.
TopicState train_btm(const PooledCorpus& pooled, int num_topics, double alpha, double beta,
                     int window_r, int iterations, uint64_t seed,
                     const CancelFn& cancel = {});

struct InferOptions {
  int iterations = 30;
  int burn_in = 10;
};

struct Inferred {
  std::vector<double> theta;
  std::optional<std::string> warning;
};

// Topic distribution of an unseen document; out-of-vocabulary tokens are
// skipped. Sampling families fold the document in with phi frozen, seeded
// from the state seed and the tokens, so the result is a pure function.
Inferred infer_theta(const TopicState& state, std::span<const std::string> tokens,
                     const InferOptions& options = {});

// Text format: a header with family, hyperparameters and seed, the
// vocabulary and topic names one per line, then "index value" sparse rows for
// phi and theta, and the HLDA tree when present.
void write_topic_state(std::ostream& out, const TopicState& state);
TopicState read_topic_state(std::istream& in);

// Internal helpers shared by the trainers.
namespace topics_detail {

struct Encoded {
  Vocabulary vocab;
  std::vector<std::vector<int>> docs;
  std::size_t tokens = 0;
};

// Maps tokens to ids in first-occurrence order; throws on empty input.
Encoded encode(const PooledCorpus& pooled);

void check_positive(double value, const char* name);

}  // namespace topics_detail

}  // namespace microrec

#endif  // MICROREC_TOPICS_H_
