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

#ifndef MICROREC_CONFIG_H_
#define MICROREC_CONFIG_H_

#include <string>
#include <string_view>

#include "microrec/bag.h"
#include "microrec/corpus.h"
#include "microrec/graph.h"
#include "microrec/pooling.h"
#include "microrec/topics.h"

namespace microrec {

enum class ModelKind { kTN, kCN, kTNG, kCNG, kPLSA, kLDA, kLLDA, kHDP, kHLDA, kBTM };
enum class ModelFamily { kBag, kGraph, kTopic };
enum class Similarity { kCS, kJS, kGJS, kCoS, kVS, kNS };

inline constexpr std::array<ModelKind, 10> kAllModelKinds = {
    ModelKind::kTN,  ModelKind::kCN,   ModelKind::kTNG, ModelKind::kCNG, ModelKind::kPLSA,
    ModelKind::kLDA, ModelKind::kLLDA, ModelKind::kHDP, ModelKind::kHLDA, ModelKind::kBTM};

std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);
ModelFamily model_family(ModelKind kind);
// Token or character n-grams for bag and graph kinds.
GramUnit gram_unit(ModelKind kind);
TopicFamily topic_family(ModelKind kind);

std::string_view similarity_name(Similarity s);
Similarity parse_similarity(std::string_view name);
VectorMeasure vector_measure(Similarity s);
GraphMeasure graph_measure(Similarity s);

std::string_view weighting_name(Weighting w);
Weighting parse_weighting(std::string_view name);
std::string_view aggregation_name(Aggregation a);
Aggregation parse_aggregation(std::string_view name);

inline constexpr int kBtmPooledWindow = 30;
inline constexpr int kLldaHashtagMinCount = 30;
inline constexpr int kHldaLevels = 3;

// One point of the configuration grid. Fields irrelevant to the kind keep
// their defaults and do not appear in id().
struct ModelConfig {
  ModelKind kind = ModelKind::kTN;
  // Bag and graph models.
  int n = 1;
  Weighting weighting = Weighting::kTF;
  // Bag and topic models.
  Aggregation aggregation = Aggregation::kCentroid;
  Similarity similarity = Similarity::kCS;
  // Topic models.
  Pooling pooling = Pooling::kNP;
  int topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int iterations = 0;
  int levels = 0;

  // Stable identifier such as "TN:n=1:w=TF:a=centroid:s=CS".
  std::string id() const;

  // BTM window: whole-document biterms for single tweets, r = 30 for pooled
  // pseudo-documents.
  int btm_window() const {
    return pooling == Pooling::kNP ? kWholeDocument : kBtmPooledWindow;
  }
};

// Parses the output of ModelConfig::id().
ModelConfig parse_config_id(std::string_view id);

// Empty string when valid, otherwise the violated rule.
std::string config_violation(const ModelConfig& config);
bool config_valid(const ModelConfig& config);

// Rocchio needs negative examples, so it only applies to sources built from
// incoming tweets.
bool config_applies_to_source(const ModelConfig& config, Source source);

// Topic configurations sharing a key share one trained model per source.
std::string topic_training_key(const ModelConfig& config);

}  // namespace microrec

#endif  // MICROREC_CONFIG_H_
