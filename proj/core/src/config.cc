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

#include "microrec/config.h"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace microrec {
namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

double to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTN: return "TN";
    case ModelKind::kCN: return "CN";
    case ModelKind::kTNG: return "TNG";
    case ModelKind::kCNG: return "CNG";
    case ModelKind::kPLSA: return "PLSA";
    case ModelKind::kLDA: return "LDA";
    case ModelKind::kLLDA: return "LLDA";
    case ModelKind::kHDP: return "HDP";
    case ModelKind::kHLDA: return "HLDA";
    case ModelKind::kBTM: return "BTM";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : kAllModelKinds) {
    if (model_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

ModelFamily model_family(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTN:
    case ModelKind::kCN: return ModelFamily::kBag;
    case ModelKind::kTNG:
    case ModelKind::kCNG: return ModelFamily::kGraph;
    default: return ModelFamily::kTopic;
  }
}

GramUnit gram_unit(ModelKind kind) {
  return kind == ModelKind::kCN || kind == ModelKind::kCNG ? GramUnit::kCharacter
                                                           : GramUnit::kToken;
}

TopicFamily topic_family(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPLSA: return TopicFamily::kPLSA;
    case ModelKind::kLDA: return TopicFamily::kLDA;
    case ModelKind::kLLDA: return TopicFamily::kLLDA;
    case ModelKind::kHDP: return TopicFamily::kHDP;
    case ModelKind::kHLDA: return TopicFamily::kHLDA;
    case ModelKind::kBTM: return TopicFamily::kBTM;
    default: throw std::invalid_argument("not a topic model");
  }
}

std::string_view similarity_name(Similarity s) {
  switch (s) {
    case Similarity::kCS: return "CS";
    case Similarity::kJS: return "JS";
    case Similarity::kGJS: return "GJS";
    case Similarity::kCoS: return "CoS";
    case Similarity::kVS: return "VS";
    case Similarity::kNS: return "NS";
  }
  return "?";
}

Similarity parse_similarity(std::string_view name) {
  for (auto s : {Similarity::kCS, Similarity::kJS, Similarity::kGJS, Similarity::kCoS,
                 Similarity::kVS, Similarity::kNS}) {
    if (similarity_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown similarity '" + std::string(name) + "'");
}

VectorMeasure vector_measure(Similarity s) {
  switch (s) {
    case Similarity::kCS: return VectorMeasure::kCS;
    case Similarity::kJS: return VectorMeasure::kJS;
    case Similarity::kGJS: return VectorMeasure::kGJS;
    default: throw std::invalid_argument("not a vector similarity");
  }
}

GraphMeasure graph_measure(Similarity s) {
  switch (s) {
    case Similarity::kCoS: return GraphMeasure::kCoS;
    case Similarity::kVS: return GraphMeasure::kVS;
    case Similarity::kNS: return GraphMeasure::kNS;
    default: throw std::invalid_argument("not a graph similarity");
  }
}

std::string_view weighting_name(Weighting w) {
  switch (w) {
    case Weighting::kBF: return "BF";
    case Weighting::kTF: return "TF";
    case Weighting::kTFIDF: return "TF-IDF";
  }
  return "?";
}

Weighting parse_weighting(std::string_view name) {
  if (name == "BF") return Weighting::kBF;
  if (name == "TF") return Weighting::kTF;
  if (name == "TF-IDF" || name == "TFIDF") return Weighting::kTFIDF;
  throw std::invalid_argument("unknown weighting '" + std::string(name) + "'");
}

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::kSum: return "sum";
    case Aggregation::kCentroid: return "centroid";
    case Aggregation::kRocchio: return "rocchio";
  }
  return "?";
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "sum") return Aggregation::kSum;
  if (name == "centroid") return Aggregation::kCentroid;
  if (name == "rocchio" || name == "Rocchio") return Aggregation::kRocchio;
  throw std::invalid_argument("unknown aggregation '" + std::string(name) + "'");
}

std::string topic_training_key(const ModelConfig& c) {
  std::string key(model_kind_name(c.kind));
  key += ":p=";
  key += pooling_name(c.pooling);
  switch (c.kind) {
    case ModelKind::kPLSA:
    case ModelKind::kLDA:
    case ModelKind::kLLDA:
    case ModelKind::kBTM:
      key += ":k=" + std::to_string(c.topics);
      if (c.kind != ModelKind::kPLSA) {
        key += ":alpha=" + shortest(c.alpha) + ":beta=" + shortest(c.beta);
      }
      break;
    case ModelKind::kHDP:
      key += ":alpha=" + shortest(c.alpha) + ":beta=" + shortest(c.beta) +
             ":gamma=" + shortest(c.gamma);
      break;
    case ModelKind::kHLDA:
      key += ":L=" + std::to_string(c.levels) + ":alpha=" + shortest(c.alpha) +
             ":beta=" + shortest(c.beta) + ":gamma=" + shortest(c.gamma);
      break;
    default: throw std::invalid_argument("not a topic model");
  }
  key += ":it=" + std::to_string(c.iterations);
  return key;
}

std::string ModelConfig::id() const {
  std::string out(model_kind_name(kind));
  switch (model_family(kind)) {
    case ModelFamily::kBag:
      out += ":n=" + std::to_string(n) + ":w=" + std::string(weighting_name(weighting)) +
             ":a=" + std::string(aggregation_name(aggregation));
      break;
    case ModelFamily::kGraph:
      out += ":n=" + std::to_string(n);
      break;
    case ModelFamily::kTopic:
      out = topic_training_key(*this) + ":a=" + std::string(aggregation_name(aggregation));
      break;
  }
  out += ":s=" + std::string(similarity_name(similarity));
  return out;
}

ModelConfig parse_config_id(std::string_view id) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto colon = id.find(':');
    parts.push_back(id.substr(0, colon));
    if (colon == std::string_view::npos) break;
    id.remove_prefix(colon + 1);
  }
  ModelConfig c;
  c.kind = parse_model_kind(parts.front());
  if (model_family(c.kind) == ModelFamily::kGraph) c.similarity = Similarity::kCoS;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("bad config field '" + std::string(parts[i]) + "'");
    }
    const auto key = parts[i].substr(0, eq);
    const auto value = parts[i].substr(eq + 1);
    if (key == "n") c.n = to_int(value);
    else if (key == "w") c.weighting = parse_weighting(value);
    else if (key == "a") c.aggregation = parse_aggregation(value);
    else if (key == "s") c.similarity = parse_similarity(value);
    else if (key == "p") c.pooling = parse_pooling(value);
    else if (key == "k") c.topics = to_int(value);
    else if (key == "alpha") c.alpha = to_double(value);
    else if (key == "beta") c.beta = to_double(value);
    else if (key == "gamma") c.gamma = to_double(value);
    else if (key == "it") c.iterations = to_int(value);
    else if (key == "L") c.levels = to_int(value);
    else throw std::invalid_argument("unknown config field '" + std::string(key) + "'");
  }
  return c;
}

std::string config_violation(const ModelConfig& c) {
  switch (model_family(c.kind)) {
    case ModelFamily::kBag: {
      if (c.n < 1) return "n must be >= 1";
      if (c.similarity != Similarity::kCS && c.similarity != Similarity::kJS &&
          c.similarity != Similarity::kGJS) {
        return "bag models use CS, JS or GJS";
      }
      if (c.similarity == Similarity::kJS && c.weighting != Weighting::kBF) {
        return "JS only with BF weights";
      }
      if (c.similarity == Similarity::kGJS && c.weighting == Weighting::kBF) {
        return "GJS only with TF or TF-IDF weights";
      }
      if (c.kind == ModelKind::kCN && c.weighting == Weighting::kTFIDF) {
        return "CN is never combined with TF-IDF";
      }
      if (c.weighting == Weighting::kBF && c.aggregation != Aggregation::kSum) {
        return "BF only with the sum aggregation";
      }
      if (c.aggregation == Aggregation::kRocchio && c.similarity != Similarity::kCS) {
        return "Rocchio only with CS";
      }
      return {};
    }
    case ModelFamily::kGraph:
      if (c.n < 1) return "n must be >= 1";
      if (c.similarity != Similarity::kCoS && c.similarity != Similarity::kVS &&
          c.similarity != Similarity::kNS) {
        return "graph models use CoS, VS or NS";
      }
      return {};
    case ModelFamily::kTopic:
      if (c.similarity != Similarity::kCS) return "topic models use CS";
      if (c.aggregation == Aggregation::kSum) return "topic models use centroid or Rocchio";
      if (c.iterations < 1) return "iterations must be >= 1";
      if (c.kind == ModelKind::kHDP || c.kind == ModelKind::kHLDA) {
        if (!(c.alpha > 0 && c.beta > 0 && c.gamma > 0)) return "alpha, beta, gamma must be > 0";
      } else {
        if (c.topics < (c.kind == ModelKind::kLLDA ? 0 : 1)) return "topics out of range";
        if (c.kind != ModelKind::kPLSA && !(c.alpha > 0 && c.beta > 0)) {
          return "alpha, beta must be > 0";
        }
      }
      if (c.kind == ModelKind::kHLDA && c.levels < 2) return "levels must be >= 2";
      return {};
  }
  return {};
}

bool config_valid(const ModelConfig& config) { return config_violation(config).empty(); }

bool config_applies_to_source(const ModelConfig& config, Source source) {
  return config.aggregation != Aggregation::kRocchio || source_has_negatives(source);
}

}  // namespace microrec
