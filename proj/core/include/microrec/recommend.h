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

#ifndef MICROREC_RECOMMEND_H_
#define MICROREC_RECOMMEND_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "microrec/config.h"

namespace microrec {

// Text preprocessing fitted on training tweets: tokenization followed by
// removal of the stoplist. Character models only lowercase the raw text.
class Preprocessor {
 public:
  Preprocessor() = default;
  explicit Preprocessor(std::set<std::string> stoplist) : stoplist_(std::move(stoplist)) {}

  const std::set<std::string>& stoplist() const { return stoplist_; }

  std::vector<std::string> tokens(const Tweet& tweet) const;

  // Precomputes tokens so later lookups are cheap. Not thread-safe; call
  // before sharing the preprocessor.
  void warm(std::span<const Tweet* const> tweets);

 private:
  std::set<std::string> stoplist_;
  std::unordered_map<const Tweet*, std::vector<std::string>> cache_;
};

// The n-grams a bag or graph model of `kind` sees in a tweet.
std::vector<std::string> model_grams(const Tweet& tweet, ModelKind kind, int n,
                                     const Preprocessor& pre);

// Turns tweets into the document representation of one configuration. Topic
// distributions are cached per tweet id; the cache is internally locked.
class DocumentEncoder {
 public:
  DocumentEncoder(ModelConfig config, const Preprocessor* pre, const CorpusStats* stats = nullptr,
                  std::shared_ptr<const TopicState> state = nullptr, InferOptions infer = {});

  const ModelConfig& config() const { return config_; }
  const TopicState* topic_state() const { return state_.get(); }

  // Empty documents yield empty vectors and graphs.
  VectorModel vector(const Tweet& tweet) const;
  GraphModel graph(const Tweet& tweet) const;
  std::vector<double> theta(const Tweet& tweet) const;

  // Number of documents whose tokens were all out of vocabulary.
  std::size_t oov_documents() const;

 private:
  ModelConfig config_;
  const Preprocessor* pre_;
  const CorpusStats* stats_;
  std::shared_ptr<const TopicState> state_;
  InferOptions infer_;
  mutable std::mutex mu_;
  mutable std::unordered_map<TweetId, std::vector<double>> cache_;
  mutable std::size_t oov_ = 0;
};

struct UserModel {
  ModelFamily family = ModelFamily::kBag;
  std::variant<VectorModel, GraphModel, std::vector<double>> payload;
  Source source = Source::kT;
  std::string config_id;
};

// Bag: per-tweet vectors aggregated per the configuration (BF with sum is the
// boolean OR of the documents). Graph: merge of the per-tweet graphs. Topic:
// mean of the inferred distributions, or the Rocchio combination of positive
// and negative distributions clamped at zero and renormalized.
// Throws "empty training set" and "missing topic state".
UserModel build_user_model(std::span<const SourceDoc> train_docs, Source source,
                           const DocumentEncoder& encoder);

struct RankedEntry {
  TweetId tweet_id;
  int64_t timestamp = 0;
  double score = 0.0;
  bool relevant = false;
};

struct RankedList {
  std::vector<RankedEntry> entries;
};

// Scores every test tweet against the user model and sorts by descending
// score; ties put later tweets first, then ascending id.
RankedList rank(const UserModel& model, std::span<const TestDoc> test_docs,
                const DocumentEncoder& encoder);

// Latest first; equal timestamps by descending id. Scores are the timestamps.
RankedList baseline_chr(std::span<const TestDoc> test_docs);

// Uniform random permutation; scores decrease from 1 in steps of 1/N.
RankedList baseline_ran(std::span<const TestDoc> test_docs, uint64_t seed);

// "rank,tweet_id,score,relevant" with a header line.
void write_ranked_csv(std::ostream& out, const RankedList& list);

}  // namespace microrec

#endif  // MICROREC_RECOMMEND_H_
