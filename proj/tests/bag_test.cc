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
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "microrec/bag.h"
#include "microrec/random.h"

namespace microrec {
namespace {

VectorModel vec(std::map<std::string, double> weights) {
  return VectorModel{GramUnit::kToken, 1, std::move(weights)};
}

std::vector<std::string> grams(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

TEST(Vectorize, TermFrequency) {
  const auto v = vectorize(grams({"a", "b", "a"}), GramUnit::kToken, 1, Weighting::kTF);
  EXPECT_DOUBLE_EQ(v.weights.at("a"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(v.weights.at("b"), 1.0 / 3.0);
}

TEST(Vectorize, Boolean) {
  const auto v = vectorize(grams({"a", "b", "a"}), GramUnit::kToken, 1, Weighting::kBF);
  EXPECT_EQ(v.weights, (std::map<std::string, double>{{"a", 1.0}, {"b", 1.0}}));
}

TEST(Vectorize, TfIdfUsesNaturalLog) {
  CorpusStats stats;
  stats.add_document(grams({"a"}));
  stats.add_document(grams({"b"}));
  stats.add_document(grams({"c"}));
  stats.add_document(grams({"d"}));
  ASSERT_EQ(stats.doc_count(), 4u);
  ASSERT_EQ(stats.doc_freq("a"), 1u);
  const auto v = vectorize(grams({"a"}), GramUnit::kToken, 1, Weighting::kTFIDF, &stats);
  EXPECT_NEAR(v.weights.at("a"), std::log(4.0 / 2.0), 1e-15);
  EXPECT_NEAR(v.weights.at("a"), 0.6931, 1e-4);
}

TEST(Vectorize, EmptyDocument) {
  EXPECT_THROW(vectorize({}, GramUnit::kToken, 1, Weighting::kTF), std::invalid_argument);
  EXPECT_TRUE(vectorize({}, GramUnit::kToken, 1, Weighting::kBF).empty());
  EXPECT_THROW(vectorize(grams({"a"}), GramUnit::kToken, 1, Weighting::kTFIDF, nullptr),
               std::invalid_argument);
}

TEST(Vectorize, TfSumsToOne) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> g;
    const auto n = 1 + rng.uniform_int(30);
    for (uint64_t i = 0; i < n; ++i) g.push_back(std::string(1, static_cast<char>('a' + rng.uniform_int(8))));
    const auto v = vectorize(g, GramUnit::kToken, 1, Weighting::kTF);
    double s = 0.0;
    for (const auto& [k, w] : v.weights) s += w;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(CorpusStats, IdfStrictlyDecreasing) {
  CorpusStats stats;
  for (int d = 0; d < 10; ++d) {
    std::vector<std::string> doc;
    for (int k = 0; k <= d; ++k) doc.push_back("g" + std::to_string(k));
    stats.add_document(doc);
  }
  // g_k appears in 10 - k documents.
  for (int k = 0; k + 1 < 10; ++k) {
    EXPECT_LT(stats.idf("g" + std::to_string(k)), stats.idf("g" + std::to_string(k + 1)));
  }
}

TEST(Aggregate, Sum) {
  const auto a = vec({{"a", 1}});
  const auto b = vec({{"a", 1}, {"b", 1}});
  const std::vector<LabeledVector> in{{&a, true}, {&b, true}};
  EXPECT_EQ(aggregate(in, Aggregation::kSum).weights,
            (std::map<std::string, double>{{"a", 2}, {"b", 1}}));
}

TEST(Aggregate, Centroid) {
  const auto a = vec({{"x", 1}});
  const auto b = vec({{"y", 1}});
  const std::vector<LabeledVector> in{{&a, true}, {&b, true}};
  const auto c = aggregate(in, Aggregation::kCentroid);
  EXPECT_DOUBLE_EQ(c.weights.at("x"), 0.5);
  EXPECT_DOUBLE_EQ(c.weights.at("y"), 0.5);
}

TEST(Aggregate, CentroidNormalizesMagnitude) {
  const auto a = vec({{"x", 3}, {"y", 4}});
  const std::vector<LabeledVector> in{{&a, true}};
  const auto c = aggregate(in, Aggregation::kCentroid);
  EXPECT_DOUBLE_EQ(c.weights.at("x"), 0.6);
  EXPECT_DOUBLE_EQ(c.weights.at("y"), 0.8);
}

TEST(Aggregate, RocchioClampsNegatives) {
  const auto pos = vec({{"x", 1}});
  const auto neg = vec({{"y", 1}});
  const std::vector<LabeledVector> in{{&pos, true}, {&neg, false}};
  // Raw combination: 0.8 * (1, 0) - 0.2 * (0, 1) = (0.8, -0.2).
  const double raw_y = 0.8 * 0.0 - 0.2 * 1.0;
  EXPECT_LT(raw_y, 0.0);
  const auto r = aggregate(in, Aggregation::kRocchio);
  EXPECT_DOUBLE_EQ(r.weights.at("x"), 0.8);
  EXPECT_FALSE(r.weights.contains("y"));
}

TEST(Aggregate, Errors) {
  const auto neg = vec({{"y", 1}});
  const auto zero = vec({});
  const std::vector<LabeledVector> only_neg{{&neg, false}};
  EXPECT_THROW(aggregate(only_neg, Aggregation::kRocchio), std::invalid_argument);
  const std::vector<LabeledVector> has_zero{{&zero, true}};
  EXPECT_THROW(aggregate(has_zero, Aggregation::kCentroid), std::invalid_argument);
  EXPECT_THROW(aggregate(only_neg, Aggregation::kRocchio, RocchioWeights{0.5, 0.2}),
               std::invalid_argument);
}

TEST(Aggregate, CentroidOfCopiesIsTheVector) {
  const auto u = vec({{"a", 0.6}, {"b", 0.8}});
  for (int k = 1; k <= 7; ++k) {
    std::vector<LabeledVector> in(static_cast<std::size_t>(k), LabeledVector{&u, true});
    const auto c = aggregate(in, Aggregation::kCentroid);
    EXPECT_NEAR(c.weights.at("a"), 0.6, 1e-12);
    EXPECT_NEAR(c.weights.at("b"), 0.8, 1e-12);
  }
}

TEST(Similarity, Cosine) {
  const auto a = vec({{"x", 1}, {"y", 2}});
  const auto b = vec({{"x", 2}, {"y", 1}});
  // (1*2 + 2*1) / (sqrt(5) * sqrt(5))
  EXPECT_NEAR(vector_similarity(a, b, VectorMeasure::kCS), 4.0 / 5.0, 1e-15);
}

TEST(Similarity, Jaccard) {
  const auto a = vec({{"a", 1}, {"b", 1}, {"c", 1}});
  const auto b = vec({{"b", 1}, {"c", 1}, {"d", 1}});
  EXPECT_DOUBLE_EQ(vector_similarity(a, b, VectorMeasure::kJS), 0.5);
}

TEST(Similarity, GeneralizedJaccard) {
  const auto a = vec({{"a", 1}, {"b", 2}});
  const auto b = vec({{"a", 2}, {"b", 1}});
  EXPECT_DOUBLE_EQ(vector_similarity(a, b, VectorMeasure::kGJS), 0.5);
}

TEST(Similarity, EmptyScoresZero) {
  const auto a = vec({{"a", 1}});
  const auto e = vec({});
  for (auto m : {VectorMeasure::kCS, VectorMeasure::kJS, VectorMeasure::kGJS}) {
    EXPECT_EQ(vector_similarity(a, e, m), 0.0);
    EXPECT_EQ(vector_similarity(e, e, m), 0.0);
  }
}

TEST(Similarity, MismatchThrows) {
  const auto a = vec({{"a", 1}});
  const VectorModel b{GramUnit::kCharacter, 1, {{"a", 1}}};
  const VectorModel c{GramUnit::kToken, 2, {{"a", 1}}};
  EXPECT_THROW(vector_similarity(a, b, VectorMeasure::kCS), std::invalid_argument);
  EXPECT_THROW(vector_similarity(a, c, VectorMeasure::kCS), std::invalid_argument);
}

VectorModel random_vector(Rng& rng, bool boolean) {
  VectorModel v;
  const auto n = rng.uniform_int(8);
  for (uint64_t i = 0; i < n; ++i) {
    v.weights[std::string(1, static_cast<char>('a' + rng.uniform_int(10)))] =
        boolean ? 1.0 : 0.01 + rng.uniform();
  }
  return v;
}

TEST(SimilarityProperty, SymmetricBoundedSelfOne) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_vector(rng, false);
    const auto b = random_vector(rng, false);
    for (auto m : {VectorMeasure::kCS, VectorMeasure::kJS, VectorMeasure::kGJS}) {
      const double ab = vector_similarity(a, b, m);
      EXPECT_EQ(ab, vector_similarity(b, a, m));
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(ab, 1.0);
      if (!a.empty()) EXPECT_NEAR(vector_similarity(a, a, m), 1.0, 1e-12);
    }
  }
}

TEST(SimilarityProperty, GjsEqualsJsForBooleanWeights) {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_vector(rng, true);
    const auto b = random_vector(rng, true);
    EXPECT_NEAR(vector_similarity(a, b, VectorMeasure::kGJS),
                vector_similarity(a, b, VectorMeasure::kJS), 1e-12);
  }
}

TEST(VectorText, RoundTripEscapes) {
  const auto v = vec({{"a\tb", 0.25}, {"new\nline", 1.5}, {"back\\slash", 2}});
  std::stringstream ss;
  write_vector_text(ss, v);
  const auto back = read_vector_text(ss, GramUnit::kToken, 1);
  EXPECT_EQ(back.weights, v.weights);
}

}  // namespace
}  // namespace microrec
