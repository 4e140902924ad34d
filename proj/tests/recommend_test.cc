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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "microrec/recommend.h"
#include "test_util.h"

namespace microrec {
namespace {

using testing::make_tweet;

ModelConfig bag_config(Weighting w = Weighting::kTF, Aggregation a = Aggregation::kCentroid,
                       Similarity s = Similarity::kCS) {
  ModelConfig c;
  c.kind = ModelKind::kTN;
  c.n = 1;
  c.weighting = w;
  c.aggregation = a;
  c.similarity = s;
  return c;
}

ModelConfig graph_config() {
  ModelConfig c;
  c.kind = ModelKind::kTNG;
  c.n = 1;
  c.similarity = Similarity::kVS;
  return c;
}

ModelConfig topic_config(Aggregation a = Aggregation::kCentroid) {
  ModelConfig c;
  c.kind = ModelKind::kLDA;
  c.pooling = Pooling::kNP;
  c.topics = 2;
  c.alpha = 1e-9;
  c.beta = 0.01;
  c.iterations = 1;
  c.aggregation = a;
  c.similarity = Similarity::kCS;
  return c;
}

// Two topics that own one word each, so fold-in is deterministic.
std::shared_ptr<const TopicState> separable_state() {
  auto s = std::make_shared<TopicState>();
  s->family = TopicFamily::kLDA;
  s->hyper.alpha = 1e-9;
  s->hyper.beta = 0.01;
  s->hyper.num_topics = 2;
  s->vocab.add("a");
  s->vocab.add("b");
  s->topic_names = {"Topic 0", "Topic 1"};
  s->phi = {{1.0, 0.0}, {0.0, 1.0}};
  return s;
}

std::vector<SourceDoc> positives(const std::vector<Tweet>& tweets) {
  std::vector<SourceDoc> out;
  for (const auto& t : tweets) out.push_back({&t, true});
  return out;
}

std::vector<TestDoc> test_docs(const std::vector<Tweet>& tweets,
                               std::vector<bool> relevant = {}) {
  std::vector<TestDoc> out;
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    out.push_back({&tweets[i], i < relevant.size() && relevant[i]});
  }
  return out;
}

std::vector<std::string> order(const RankedList& list) {
  std::vector<std::string> out;
  for (const auto& e : list.entries) out.push_back(e.tweet_id);
  return out;
}

TEST(UserModel, SingleBagDocumentUnderSumAndCentroid) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "alpha beta alpha")};
  for (auto agg : {Aggregation::kSum, Aggregation::kCentroid}) {
    const DocumentEncoder enc(bag_config(Weighting::kTF, agg), &pre);
    const auto model = build_user_model(positives(train), Source::kT, enc);
    const auto& got = std::get<VectorModel>(model.payload);
    const auto doc = enc.vector(train[0]);
    if (agg == Aggregation::kSum) {
      EXPECT_EQ(got.weights, doc.weights);
    } else {
      // Centroid keeps the direction of the only vector at unit length.
      for (const auto& [g, w] : doc.weights) {
        EXPECT_NEAR(got.weights.at(g), w / doc.magnitude(), 1e-12);
      }
    }
  }
  const std::vector<Tweet> unit{make_tweet("2", "u", 0, "alpha")};
  const DocumentEncoder enc(bag_config(), &pre);
  EXPECT_EQ(std::get<VectorModel>(build_user_model(positives(unit), Source::kT, enc).payload).weights,
            enc.vector(unit[0]).weights);
}

TEST(UserModel, BooleanSumIsBinary) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a b"), make_tweet("2", "u", 1, "a c")};
  const DocumentEncoder enc(bag_config(Weighting::kBF, Aggregation::kSum, Similarity::kJS), &pre);
  const auto model = build_user_model(positives(train), Source::kT, enc);
  for (const auto& [g, w] : std::get<VectorModel>(model.payload).weights) EXPECT_EQ(w, 1.0);
}

TEST(UserModel, GraphIsMergeOfDocuments) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a b c"), make_tweet("2", "u", 1, "b c d")};
  const DocumentEncoder enc(graph_config(), &pre);
  const auto model = build_user_model(positives(train), Source::kT, enc);
  const std::vector<GraphModel> parts{enc.graph(train[0]), enc.graph(train[1])};
  EXPECT_EQ(std::get<GraphModel>(model.payload).edges, merge_graphs(parts).edges);
}

TEST(UserModel, TopicCentroid) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a a"), make_tweet("2", "u", 1, "b")};
  const DocumentEncoder enc(topic_config(), &pre, nullptr, separable_state());
  EXPECT_NEAR(enc.theta(train[0])[0], 1.0, 1e-8);
  EXPECT_NEAR(enc.theta(train[1])[1], 1.0, 1e-8);
  const auto model = build_user_model(positives(train), Source::kT, enc);
  const auto& theta = std::get<std::vector<double>>(model.payload);
  EXPECT_NEAR(theta[0], 0.5, 1e-8);
  EXPECT_NEAR(theta[1], 0.5, 1e-8);
}

TEST(UserModel, TopicRocchioClampsAndRenormalizes) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a a a b"), make_tweet("2", "u", 1, "b")};
  const DocumentEncoder enc(topic_config(Aggregation::kRocchio), &pre, nullptr, separable_state());
  const std::vector<SourceDoc> docs{{&train[0], true}, {&train[1], false}};
  const auto model = build_user_model(docs, Source::kE, enc);
  const auto& theta = std::get<std::vector<double>>(model.payload);
  // 0.8 * (0.75, 0.25) - 0.2 * (0, 1) = (0.6, 0.0) -> (1, 0).
  EXPECT_NEAR(theta[0], 1.0, 1e-8);
  EXPECT_NEAR(theta[1], 0.0, 1e-8);
  EXPECT_NEAR(theta[0] + theta[1], 1.0, 1e-12);
}

TEST(UserModel, RocchioWithoutNegativesIsCentroid) {
  const Preprocessor pre;
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a b"), make_tweet("2", "u", 1, "a c")};
  const DocumentEncoder rocchio(bag_config(Weighting::kTF, Aggregation::kRocchio), &pre);
  const DocumentEncoder centroid(bag_config(Weighting::kTF, Aggregation::kCentroid), &pre);
  EXPECT_EQ(std::get<VectorModel>(build_user_model(positives(train), Source::kT, rocchio).payload).weights,
            std::get<VectorModel>(build_user_model(positives(train), Source::kT, centroid).payload).weights);
}

TEST(UserModel, Errors) {
  const Preprocessor pre;
  const DocumentEncoder enc(bag_config(), &pre);
  EXPECT_THROW(build_user_model({}, Source::kT, enc), std::invalid_argument);
  const std::vector<Tweet> train{make_tweet("1", "u", 0, "a")};
  const DocumentEncoder topic(topic_config(), &pre);
  EXPECT_THROW(build_user_model(positives(train), Source::kT, topic), std::invalid_argument);
}

TEST(Rank, ScoresByCosine) {
  const Preprocessor pre;
  const DocumentEncoder enc(bag_config(), &pre);
  const std::vector<Tweet> train{make_tweet("t", "u", 0, "a")};
  const auto model = build_user_model(positives(train), Source::kT, enc);
  const std::vector<Tweet> tests{make_tweet("b", "x", 5, "b"), make_tweet("a", "x", 1, "a")};
  const auto ranked = rank(model, test_docs(tests), enc);
  EXPECT_EQ(order(ranked), (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(ranked.entries[0].score, 1.0);
  EXPECT_DOUBLE_EQ(ranked.entries[1].score, 0.0);
}

TEST(Rank, TiesPreferLaterThenSmallerId) {
  const Preprocessor pre;
  const DocumentEncoder enc(bag_config(), &pre);
  const std::vector<Tweet> train{make_tweet("t", "u", 0, "a")};
  const auto model = build_user_model(positives(train), Source::kT, enc);
  const std::vector<Tweet> tests{make_tweet("q", "x", 1, "a"), make_tweet("p", "x", 1, "a"),
                                 make_tweet("r", "x", 3, "a")};
  EXPECT_EQ(order(rank(model, test_docs(tests), enc)), (std::vector<std::string>{"r", "p", "q"}));
  EXPECT_TRUE(rank(model, {}, enc).entries.empty());
}

TEST(Rank, FamilyMismatchThrows) {
  const Preprocessor pre;
  const DocumentEncoder bag(bag_config(), &pre);
  const DocumentEncoder graph(graph_config(), &pre);
  const std::vector<Tweet> train{make_tweet("t", "u", 0, "a b")};
  const auto model = build_user_model(positives(train), Source::kT, bag);
  EXPECT_THROW(rank(model, test_docs(train), graph), std::invalid_argument);
}

std::vector<Tweet> random_tweets(Rng& rng, int count, const std::string& prefix) {
  const std::vector<std::string> words{"a", "b", "c", "d", "e", "f"};
  std::vector<Tweet> out;
  for (int i = 0; i < count; ++i) {
    std::string text;
    const auto len = 1 + rng.uniform_int(5);
    for (uint64_t k = 0; k < len; ++k) text += words[rng.uniform_int(words.size())] + " ";
    out.push_back(make_tweet(prefix + std::to_string(i), "x", static_cast<int64_t>(rng.uniform_int(5)), text));
  }
  return out;
}

TEST(RankProperty, PermutationBoundedAndScaleInvariant) {
  Rng rng(41);
  const Preprocessor pre;
  const std::vector<ModelConfig> configs{
      bag_config(), bag_config(Weighting::kBF, Aggregation::kSum, Similarity::kJS),
      bag_config(Weighting::kTF, Aggregation::kSum, Similarity::kGJS), graph_config()};
  for (int trial = 0; trial < 200; ++trial) {
    const auto train = random_tweets(rng, 3, "t");
    const auto tests = random_tweets(rng, 6, "d");
    for (const auto& config : configs) {
      const DocumentEncoder enc(config, &pre);
      const auto model = build_user_model(positives(train), Source::kT, enc);
      const auto ranked = rank(model, test_docs(tests), enc);
      auto ids = order(ranked);
      std::sort(ids.begin(), ids.end());
      std::vector<std::string> expected;
      for (const auto& t : tests) expected.push_back(t.id);
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(ids, expected);
      for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        EXPECT_GE(ranked.entries[i].score, 0.0);
        EXPECT_LE(ranked.entries[i].score, 1.0 + 1e-12);
        if (i) EXPECT_GE(ranked.entries[i - 1].score, ranked.entries[i].score);
      }
    }
    // Scaling a CS user model leaves the order intact.
    const DocumentEncoder enc(bag_config(), &pre);
    auto model = build_user_model(positives(train), Source::kT, enc);
    const auto before = rank(model, test_docs(tests), enc);
    for (auto& [g, w] : std::get<VectorModel>(model.payload).weights) w *= 7.5;
    const auto after = rank(model, test_docs(tests), enc);
    for (std::size_t i = 0; i < before.entries.size(); ++i) {
      EXPECT_NEAR(before.entries[i].score, after.entries[i].score, 1e-12);
    }
  }
}

TEST(Chronological, LatestFirst) {
  const std::vector<Tweet> tests{make_tweet("a", "x", 5, "."), make_tweet("b", "x", 9, "."),
                                 make_tweet("c", "x", 1, ".")};
  EXPECT_EQ(order(baseline_chr(test_docs(tests))), (std::vector<std::string>{"b", "a", "c"}));
  const std::vector<Tweet> ties{make_tweet("1", "x", 3, "."), make_tweet("2", "x", 3, ".")};
  EXPECT_EQ(order(baseline_chr(test_docs(ties))), (std::vector<std::string>{"2", "1"}));
  const std::vector<Tweet> one{make_tweet("1", "x", 3, ".")};
  EXPECT_EQ(order(baseline_chr(test_docs(one))), (std::vector<std::string>{"1"}));
}

TEST(Random, DeterministicAndUniform) {
  const std::vector<Tweet> tests{make_tweet("a", "x", 0, "."), make_tweet("b", "x", 0, "."),
                                 make_tweet("c", "x", 0, ".")};
  const auto docs = test_docs(tests);
  EXPECT_EQ(order(baseline_ran(docs, 5)), order(baseline_ran(docs, 5)));
  EXPECT_TRUE(baseline_ran({}, 5).entries.empty());
  std::map<std::vector<std::string>, int> counts;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) ++counts[order(baseline_ran(docs, derive_seed(9, std::to_string(s))))];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, n] : counts) EXPECT_NEAR(n / static_cast<double>(trials), 1.0 / 6.0, 0.02);
  const auto r = baseline_ran(docs, 1);
  EXPECT_DOUBLE_EQ(r.entries[0].score, 1.0);
  EXPECT_DOUBLE_EQ(r.entries[2].score, 1.0 - 2.0 / 3.0);
}

TEST(RankedCsv, Format) {
  RankedList list;
  list.entries.push_back({"t1", 5, 0.5, true});
  list.entries.push_back({"t2", 4, 0.25, false});
  std::ostringstream out;
  write_ranked_csv(out, list);
  EXPECT_EQ(out.str(), "rank,tweet_id,score,relevant\n1,t1,0.5,1\n2,t2,0.25,0\n");
}

TEST(Preprocessor, DropsStoplistForTokensOnly) {
  const Preprocessor pre(std::set<std::string>{"the"});
  const auto t = make_tweet("1", "u", 0, "The cat");
  EXPECT_EQ(pre.tokens(t), (std::vector<std::string>{"cat"}));
  EXPECT_EQ(model_grams(t, ModelKind::kCN, 3, pre).front(), "the");
}

}  // namespace
}  // namespace microrec
