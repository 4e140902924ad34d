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

#ifndef MICROREC_BAG_H_
#define MICROREC_BAG_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace microrec {

enum class GramUnit { kToken, kCharacter };

enum class Weighting { kBF, kTF, kTFIDF };

enum class Aggregation { kSum, kCentroid, kRocchio };

enum class VectorMeasure { kCS, kJS, kGJS };

// Sparse n-gram vector. Only strictly positive weights are stored.
struct VectorModel {
  GramUnit unit = GramUnit::kToken;
  int n = 1;
  std::map<std::string, double> weights;

  bool empty() const { return weights.empty(); }
  double magnitude() const;
};

// Document frequencies over a training collection D.
class CorpusStats {
 public:
  CorpusStats() = default;

  // Each inner list is one document's n-grams (duplicates allowed).
  static CorpusStats from_documents(std::span<const std::vector<std::string>> documents);

  void add_document(std::span<const std::string> grams);

  std::size_t doc_count() const { return doc_count_; }
  std::size_t doc_freq(const std::string& gram) const;

  // ln(|D| / (df + 1)). Strictly decreasing in df; negative when df >= |D|.
  double idf(const std::string& gram) const;

 private:
  std::size_t doc_count_ = 0;
  std::unordered_map<std::string, std::size_t> doc_freq_;
};

// BF: 1 per distinct n-gram. TF: f / N. TF-IDF: TF * idf, dropping
// coordinates whose IDF is not positive. TF and TF-IDF throw
// std::invalid_argument("empty document") on an empty list; TF-IDF also
// requires `stats`.
VectorModel vectorize(std::span<const std::string> grams, GramUnit unit, int n,
                      Weighting scheme, const CorpusStats* stats = nullptr);

struct LabeledVector {
  const VectorModel* vector = nullptr;
  bool positive = true;
};

struct RocchioWeights {
  double alpha = 0.8;
  double beta = 0.2;
};

// sum: coordinate-wise sum. centroid: mean of unit-normalised vectors.
// rocchio: alpha * mean(normalised positives) - beta * mean(normalised
// negatives), negative coordinates clamped to zero. Labels are ignored by sum
// and centroid.
//
// Throws std::invalid_argument for rocchio without positives, for
// alpha + beta != 1, for a zero-magnitude vector under centroid/rocchio, on
// unit/n mismatch, and for centroid over an empty list.
VectorModel aggregate(std::span<const LabeledVector> vectors, Aggregation fn,
                      RocchioWeights rocchio = {});

// CS, JS or GJS in [0, 1]. Empty operands score 0. Throws on unit/n mismatch.
double vector_similarity(const VectorModel& a, const VectorModel& b, VectorMeasure measure);

// Debug format: one "ngram<TAB>weight" line per coordinate, with tab, newline
// and backslash escaped inside n-grams.
void write_vector_text(std::ostream& out, const VectorModel& vector);
VectorModel read_vector_text(std::istream& in, GramUnit unit, int n);

std::string escape_gram(const std::string& gram);
std::string unescape_gram(const std::string& text);

}  // namespace microrec

#endif  // MICROREC_BAG_H_
