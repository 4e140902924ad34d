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

#include "microrec/bag.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace microrec {
namespace {

void check_compatible(const VectorModel& a, const VectorModel& b) {
  if (a.unit != b.unit || a.n != b.n) {
    throw std::invalid_argument("vector models differ in n-gram unit or size");
  }
}

// Adds scale * v / |v| into acc.
void add_normalized(std::map<std::string, double>& acc, const VectorModel& v, double scale) {
  const double norm = v.magnitude();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("zero-magnitude vector in centroid/rocchio aggregation");
  }
  for (const auto& [gram, w] : v.weights) acc[gram] += scale * w / norm;
}

void drop_nonpositive(std::map<std::string, double>& weights) {
  std::erase_if(weights, [](const auto& kv) { return !(kv.second > 0.0); });
}

}  // namespace

double VectorModel::magnitude() const {
  double sum = 0.0;
  for (const auto& [gram, w] : weights) sum += w * w;
  return std::sqrt(sum);
}

CorpusStats CorpusStats::from_documents(std::span<const std::vector<std::string>> documents) {
  CorpusStats stats;
  for (const auto& doc : documents) stats.add_document(doc);
  return stats;
}

void CorpusStats::add_document(std::span<const std::string> grams) {
  ++doc_count_;
  std::unordered_set<std::string_view> seen;
  for (const auto& g : grams) {
    if (seen.insert(g).second) ++doc_freq_[g];
  }
}

std::size_t CorpusStats::doc_freq(const std::string& gram) const {
  auto it = doc_freq_.find(gram);
  return it == doc_freq_.end() ? 0 : it->second;
}

double CorpusStats::idf(const std::string& gram) const {
  return std::log(static_cast<double>(doc_count_) / static_cast<double>(doc_freq(gram) + 1));
}

VectorModel vectorize(std::span<const std::string> grams, GramUnit unit, int n,
                      Weighting scheme, const CorpusStats* stats) {
  VectorModel model{unit, n, {}};
  if (scheme == Weighting::kBF) {
    for (const auto& g : grams) model.weights[g] = 1.0;
    return model;
  }
  if (grams.empty()) throw std::invalid_argument("empty document");
  if (scheme == Weighting::kTFIDF && stats == nullptr) {
    throw std::invalid_argument("TF-IDF weighting requires corpus statistics");
  }
  for (const auto& g : grams) model.weights[g] += 1.0;
  const double total = static_cast<double>(grams.size());
  for (auto& [gram, w] : model.weights) {
    w /= total;
    if (scheme == Weighting::kTFIDF) w *= stats->idf(gram);
  }
  drop_nonpositive(model.weights);
  return model;
}

VectorModel aggregate(std::span<const LabeledVector> vectors, Aggregation fn,
                      RocchioWeights rocchio) {
  VectorModel out;
  if (!vectors.empty()) {
    out.unit = vectors.front().vector->unit;
    out.n = vectors.front().vector->n;
    for (const auto& lv : vectors) check_compatible(*vectors.front().vector, *lv.vector);
  }
  switch (fn) {
    case Aggregation::kSum:
      for (const auto& lv : vectors) {
        for (const auto& [gram, w] : lv.vector->weights) out.weights[gram] += w;
      }
      break;
    case Aggregation::kCentroid: {
      if (vectors.empty()) throw std::invalid_argument("centroid of an empty set");
      const double scale = 1.0 / static_cast<double>(vectors.size());
      for (const auto& lv : vectors) add_normalized(out.weights, *lv.vector, scale);
      break;
    }
    case Aggregation::kRocchio: {
      if (std::abs(rocchio.alpha + rocchio.beta - 1.0) > 1e-9) {
        throw std::invalid_argument("rocchio: alpha + beta must equal 1");
      }
      const auto num_pos = static_cast<std::size_t>(std::count_if(
          vectors.begin(), vectors.end(), [](const LabeledVector& lv) { return lv.positive; }));
      const std::size_t num_neg = vectors.size() - num_pos;
      if (num_pos == 0) throw std::invalid_argument("rocchio requires a positive example");
      for (const auto& lv : vectors) {
        const double scale = lv.positive ? rocchio.alpha / static_cast<double>(num_pos)
                                         : -rocchio.beta / static_cast<double>(num_neg);
        add_normalized(out.weights, *lv.vector, scale);
      }
      break;
    }
  }
  drop_nonpositive(out.weights);
  return out;
}

double vector_similarity(const VectorModel& a, const VectorModel& b, VectorMeasure measure) {
  check_compatible(a, b);
  if (a.empty() || b.empty()) return 0.0;
  switch (measure) {
    case VectorMeasure::kCS: {
      double dot = 0.0;
      auto ia = a.weights.begin();
      auto ib = b.weights.begin();
      while (ia != a.weights.end() && ib != b.weights.end()) {
        if (ia->first < ib->first) {
          ++ia;
        } else if (ib->first < ia->first) {
          ++ib;
        } else {
          dot += ia->second * ib->second;
          ++ia;
          ++ib;
        }
      }
      const double cs = dot / (a.magnitude() * b.magnitude());
      return std::clamp(cs, 0.0, 1.0);
    }
    case VectorMeasure::kJS:
    case VectorMeasure::kGJS: {
      double shared = 0.0;
      double joint = 0.0;
      double min_sum = 0.0;
      double max_sum = 0.0;
      auto ia = a.weights.begin();
      auto ib = b.weights.begin();
      while (ia != a.weights.end() || ib != b.weights.end()) {
        if (ib == b.weights.end() || (ia != a.weights.end() && ia->first < ib->first)) {
          max_sum += ia->second;
          joint += 1.0;
          ++ia;
        } else if (ia == a.weights.end() || ib->first < ia->first) {
          max_sum += ib->second;
          joint += 1.0;
          ++ib;
        } else {
          min_sum += std::min(ia->second, ib->second);
          max_sum += std::max(ia->second, ib->second);
          shared += 1.0;
          joint += 1.0;
          ++ia;
          ++ib;
        }
      }
      return measure == VectorMeasure::kJS ? shared / joint : min_sum / max_sum;
    }
  }
  return 0.0;
}

std::string escape_gram(const std::string& gram) {
  std::string out;
  out.reserve(gram.size());
  for (char c : gram) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_gram(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\' || i + 1 == text.size()) {
      out.push_back(text[i]);
      continue;
    }
    switch (text[++i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: out.push_back(text[i]);
    }
  }
  return out;
}

void write_vector_text(std::ostream& out, const VectorModel& vector) {
  char buf[32];
  for (const auto& [gram, w] : vector.weights) {
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    out << escape_gram(gram) << '\t' << buf << '\n';
  }
}

VectorModel read_vector_text(std::istream& in, GramUnit unit, int n) {
  VectorModel model{unit, n, {}};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw std::runtime_error("vector text: missing tab");
    const double w = std::stod(line.substr(tab + 1));
    if (w > 0.0) model.weights[unescape_gram(line.substr(0, tab))] = w;
  }
  return model;
}

}  // namespace microrec
