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

#include "microrec/recommend.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/text.h"

namespace microrec {
namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("topic distributions differ in size");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::vector<double> mean_of(const std::vector<std::vector<double>>& rows, std::size_t k) {
  std::vector<double> out(k, 0.0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < k; ++i) out[i] += r[i];
  }
  for (double& v : out) v /= static_cast<double>(rows.size());
  return out;
}

UserModel topic_model(std::span<const SourceDoc> docs, const DocumentEncoder& encoder) {
  const TopicState* state = encoder.topic_state();
  if (state == nullptr) throw std::invalid_argument("missing topic state");
  const std::size_t k = state->num_topics();
  std::vector<std::vector<double>> pos, neg;
  for (const SourceDoc& d : docs) (d.positive ? pos : neg).push_back(encoder.theta(*d.tweet));

  std::vector<double> out;
  if (encoder.config().aggregation != Aggregation::kRocchio || neg.empty()) {
    std::vector<std::vector<double>> all = pos;
    all.insert(all.end(), neg.begin(), neg.end());
    out = encoder.config().aggregation == Aggregation::kRocchio ? mean_of(pos.empty() ? all : pos, k)
                                                                : mean_of(all, k);
  } else {
    if (pos.empty()) throw std::invalid_argument("rocchio requires a positive example");
    const RocchioWeights w;
    const auto mp = mean_of(pos, k);
    const auto mn = mean_of(neg, k);
    out.assign(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      out[i] = std::max(0.0, w.alpha * mp[i] - w.beta * mn[i]);
      total += out[i];
    }
    if (total > 0.0) {
      for (double& v : out) v /= total;
    } else {
      out = mp;
    }
  }
  return UserModel{ModelFamily::kTopic, std::move(out), Source::kT, {}};
}

}  // namespace

std::vector<std::string> Preprocessor::tokens(const Tweet& tweet) const {
  auto it = cache_.find(&tweet);
  if (it != cache_.end()) return it->second;
  auto all = tokenize(tweet.text);
  std::erase_if(all, [&](const std::string& t) { return stoplist_.contains(t); });
  return all;
}

void Preprocessor::warm(std::span<const Tweet* const> tweets) {
  for (const Tweet* t : tweets) {
    if (!cache_.contains(t)) cache_.emplace(t, tokens(*t));
  }
}

std::vector<std::string> model_grams(const Tweet& tweet, ModelKind kind, int n,
                                     const Preprocessor& pre) {
  if (gram_unit(kind) == GramUnit::kCharacter) return char_ngrams(tweet.text, n);
  const auto tokens = pre.tokens(tweet);
  return token_ngrams(tokens, n);
}

DocumentEncoder::DocumentEncoder(ModelConfig config, const Preprocessor* pre,
                                 const CorpusStats* stats, std::shared_ptr<const TopicState> state,
                                 InferOptions infer)
    : config_(std::move(config)),
      pre_(pre),
      stats_(stats),
      state_(std::move(state)),
      infer_(infer) {
  if (pre_ == nullptr) throw std::invalid_argument("DocumentEncoder needs a preprocessor");
}

VectorModel DocumentEncoder::vector(const Tweet& tweet) const {
  const auto grams = model_grams(tweet, config_.kind, config_.n, *pre_);
  const GramUnit unit = gram_unit(config_.kind);
  if (grams.empty()) return VectorModel{unit, config_.n, {}};
  return vectorize(grams, unit, config_.n, config_.weighting, stats_);
}

GraphModel DocumentEncoder::graph(const Tweet& tweet) const {
  const auto grams = model_grams(tweet, config_.kind, config_.n, *pre_);
  return build_graph(grams, gram_unit(config_.kind), config_.n);
}

std::vector<double> DocumentEncoder::theta(const Tweet& tweet) const {
  if (!state_) throw std::invalid_argument("missing topic state");
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(tweet.id);
    if (it != cache_.end()) return it->second;
  }
  const auto tokens = pre_->tokens(tweet);
  Inferred inferred = infer_theta(*state_, tokens, infer_);
  std::lock_guard lock(mu_);
  if (inferred.warning) ++oov_;
  return cache_.emplace(tweet.id, std::move(inferred.theta)).first->second;
}

std::size_t DocumentEncoder::oov_documents() const {
  std::lock_guard lock(mu_);
  return oov_;
}

UserModel build_user_model(std::span<const SourceDoc> train_docs, Source source,
                           const DocumentEncoder& encoder) {
  if (train_docs.empty()) throw std::invalid_argument("empty training set");
  const ModelConfig& config = encoder.config();
  UserModel model;
  switch (model_family(config.kind)) {
    case ModelFamily::kBag: {
      std::vector<VectorModel> vectors;
      std::vector<bool> positive;
      for (const SourceDoc& d : train_docs) {
        VectorModel v = encoder.vector(*d.tweet);
        if (v.empty()) continue;
        vectors.push_back(std::move(v));
        positive.push_back(d.positive);
      }
      std::vector<LabeledVector> labeled;
      for (std::size_t i = 0; i < vectors.size(); ++i) labeled.push_back({&vectors[i], positive[i]});
      VectorModel agg{gram_unit(config.kind), config.n, {}};
      if (!labeled.empty()) {
        Aggregation fn = config.aggregation;
        // Rocchio degenerates to the centroid when no negatives are present.
        if (fn == Aggregation::kRocchio &&
            std::all_of(positive.begin(), positive.end(), [](bool p) { return p; })) {
          fn = Aggregation::kCentroid;
        }
        agg = aggregate(labeled, fn);
        if (config.weighting == Weighting::kBF && fn == Aggregation::kSum) {
          for (auto& [gram, w] : agg.weights) w = 1.0;
        }
      }
      model.family = ModelFamily::kBag;
      model.payload = std::move(agg);
      break;
    }
    case ModelFamily::kGraph: {
      GraphModel merged{gram_unit(config.kind), config.n, {}};
      for (const SourceDoc& d : train_docs) merge_into(merged, encoder.graph(*d.tweet));
      model.family = ModelFamily::kGraph;
      model.payload = std::move(merged);
      break;
    }
    case ModelFamily::kTopic:
      model = topic_model(train_docs, encoder);
      break;
  }
  model.source = source;
  model.config_id = config.id();
  return model;
}

RankedList rank(const UserModel& model, std::span<const TestDoc> test_docs,
                const DocumentEncoder& encoder) {
  const ModelConfig& config = encoder.config();
  if (model.family != model_family(config.kind)) {
    throw std::invalid_argument("user model family does not match the configuration");
  }
  RankedList list;
  for (const TestDoc& doc : test_docs) {
    double score = 0.0;
    switch (model.family) {
      case ModelFamily::kBag:
        score = vector_similarity(std::get<VectorModel>(model.payload), encoder.vector(*doc.tweet),
                                  vector_measure(config.similarity));
        break;
      case ModelFamily::kGraph:
        score = graph_similarity(std::get<GraphModel>(model.payload), encoder.graph(*doc.tweet),
                                 graph_measure(config.similarity));
        break;
      case ModelFamily::kTopic:
        if (config.similarity != Similarity::kCS) {
          throw std::invalid_argument("topic models are ranked with CS");
        }
        score = cosine(std::get<std::vector<double>>(model.payload), encoder.theta(*doc.tweet));
        break;
    }
    list.entries.push_back({doc.tweet->id, doc.tweet->timestamp, score, doc.relevant});
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.timestamp != b.timestamp) return a.timestamp > b.timestamp;
              return a.tweet_id < b.tweet_id;
            });
  return list;
}

RankedList baseline_chr(std::span<const TestDoc> test_docs) {
  RankedList list;
  for (const TestDoc& doc : test_docs) {
    list.entries.push_back({doc.tweet->id, doc.tweet->timestamp,
                            static_cast<double>(doc.tweet->timestamp), doc.relevant});
  }
  std::sort(list.entries.begin(), list.entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.timestamp != b.timestamp) return a.timestamp > b.timestamp;
              return a.tweet_id > b.tweet_id;
            });
  return list;
}

RankedList baseline_ran(std::span<const TestDoc> test_docs, uint64_t seed) {
  std::vector<const TestDoc*> order;
  for (const TestDoc& doc : test_docs) order.push_back(&doc);
  Rng rng(seed);
  rng.shuffle(order);
  RankedList list;
  const auto n = static_cast<double>(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    list.entries.push_back({order[i]->tweet->id, order[i]->tweet->timestamp,
                            1.0 - static_cast<double>(i) / n, order[i]->relevant});
  }
  return list;
}

void write_ranked_csv(std::ostream& out, const RankedList& list) {
  out << "rank,tweet_id,score,relevant\n";
  char buf[32];
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    std::snprintf(buf, sizeof(buf), "%.17g", e.score);
    out << (i + 1) << ',' << e.tweet_id << ',' << buf << ',' << (e.relevant ? 1 : 0) << '\n';
  }
}

}  // namespace microrec
