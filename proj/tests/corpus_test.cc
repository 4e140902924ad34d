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
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "microrec/corpus.h"
#include "microrec/corpus_io.h"
#include "microrec/random.h"
#include "microrec/text.h"
#include "test_util.h"

namespace microrec {
namespace {

using testing::make_tweet;

std::vector<std::string> S(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

TEST(Tokenize, SqueezesAndLowercases) { EXPECT_EQ(tokenize("Yeeees!"), S({"yees"})); }

TEST(Tokenize, KeepsSpecialTokens) {
  EXPECT_EQ(tokenize("check http://t.co/x #edbt @bob :)"),
            S({"check", "http://t.co/x", "#edbt", "@bob", ":)"}));
}

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, PunctuationSplits) {
  EXPECT_EQ(tokenize("good,bad...ugly"), S({"good", "bad", "ugly"}));
}

TEST(Tokenize, DoubledLettersSurvive) { EXPECT_EQ(tokenize("good"), S({"good"})); }

TEST(Tokenize, IdempotentOnRandomText) {
  const std::string alphabet = "aAbBcdeE  #@:;)(-D/.,!?<3ooo";
  Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const auto len = rng.uniform_int(30);
    for (uint64_t i = 0; i < len; ++i) text += alphabet[rng.uniform_int(alphabet.size())];
    if (rng.bernoulli(0.2)) text += " http://x.io/aaaa";
    const auto once = tokenize(text);
    std::string joined;
    for (std::size_t i = 0; i < once.size(); ++i) joined += (i ? " " : "") + once[i];
    EXPECT_EQ(tokenize(joined), once) << "input: " << text;
  }
}

TEST(CharNgrams, Basic) {
  EXPECT_EQ(char_ngrams("abcd", 2), S({"ab", "bc", "cd"}));
  EXPECT_TRUE(char_ngrams("ab", 4).empty());
  EXPECT_THROW(char_ngrams("ab", 0), std::invalid_argument);
}

TEST(CharNgrams, MisspellingSharesThreeOfFourBigrams) {
  const auto a = char_ngrams("tweet", 2);
  const auto b = char_ngrams("twete", 2);
  const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::vector<std::string> shared;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
  EXPECT_EQ(sa.size(), 4u);
  EXPECT_EQ(sb.size(), 4u);
  EXPECT_EQ(shared.size(), 3u);
}

TEST(CharNgrams, Lowercases) { EXPECT_EQ(char_ngrams("AB", 2), S({"ab"})); }

// u follows a and b; b and c follow u.
Corpus small_corpus() {
  std::vector<Tweet> tweets{
      make_tweet("t1", "u", 1, "hello world"),
      make_tweet("t2", "u", 2, "from a", "a"),
      make_tweet("a1", "a", 0, "from a"),
      make_tweet("b1", "b", 3, "from b"),
      make_tweet("c1", "c", 4, "from c"),
  };
  SocialGraph g;
  g.add_edge("u", "a");
  g.add_edge("u", "b");
  g.add_edge("b", "u");
  g.add_edge("c", "u");
  return Corpus(std::move(tweets), std::move(g));
}

std::vector<std::string> ids(const std::vector<const Tweet*>& tweets) {
  std::vector<std::string> out;
  for (const Tweet* t : tweets) out.push_back(t->id);
  return out;
}

TEST(BuildSource, UnionOfTweetsAndRetweets) {
  const Corpus c = small_corpus();
  EXPECT_EQ(ids(build_source(c, "u", Source::kTR)), S({"t1", "t2"}));
}

TEST(BuildSource, ReciprocalIsIntersection) {
  const Corpus c = small_corpus();
  EXPECT_EQ(ids(build_source(c, "u", Source::kC)), S({"b1"}));
  EXPECT_EQ(ids(build_source(c, "u", Source::kE)), S({"a1", "b1"}));
  EXPECT_EQ(ids(build_source(c, "u", Source::kF)), S({"b1", "c1"}));
}

TEST(BuildSource, UnknownUserThrows) {
  const Corpus c = small_corpus();
  EXPECT_THROW(build_source(c, "nobody", Source::kT), std::invalid_argument);
}

TEST(BuildSource, CompositesAreUnions) {
  const Corpus c = small_corpus();
  for (Source s : kAllSources) {
    std::set<std::string> expected;
    for (Source atom : source_atoms(s)) {
      for (const Tweet* t : build_source(c, "u", atom)) expected.insert(t->id);
    }
    const auto got = ids(build_source(c, "u", s));
    EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected) << source_name(s);
    EXPECT_EQ(got.size(), expected.size()) << "duplicates in " << source_name(s);
  }
}

TEST(BuildSource, RetweetInBothDeduplicated) {
  // u retweets a tweet that a retweeted as well; RE must list each id once.
  std::vector<Tweet> tweets{
      make_tweet("x", "z", 0, "orig"),
      make_tweet("a_rt", "a", 1, "orig", "z"),
      make_tweet("u_rt", "u", 2, "orig", "z"),
  };
  SocialGraph g;
  g.add_edge("u", "a");
  const Corpus c(std::move(tweets), std::move(g));
  EXPECT_EQ(ids(build_source(c, "u", Source::kRE)), S({"a_rt", "u_rt"}));
}

// `out` outgoing posts and `in` incoming ones.
Corpus ratio_corpus(int out, int in) {
  std::vector<Tweet> tweets;
  for (int i = 0; i < out; ++i) tweets.push_back(make_tweet("u" + std::to_string(i), "u", i, "x"));
  for (int i = 0; i < in; ++i) tweets.push_back(make_tweet("a" + std::to_string(i), "a", i, "y"));
  SocialGraph g;
  if (in > 0) g.add_edge("u", "a");
  return Corpus(std::move(tweets), std::move(g));
}

TEST(PostingRatio, Categories) {
  auto r = posting_ratio(ratio_corpus(100, 40), "u");
  EXPECT_DOUBLE_EQ(r.ratio, 2.5);
  EXPECT_EQ(r.type, UserType::kIP);
  r = posting_ratio(ratio_corpus(30, 100), "u");
  EXPECT_DOUBLE_EQ(r.ratio, 0.3);
  EXPECT_EQ(r.type, UserType::kIS);
  r = posting_ratio(ratio_corpus(50, 50), "u");
  EXPECT_DOUBLE_EQ(r.ratio, 1.0);
  EXPECT_EQ(r.type, UserType::kBU);
}

TEST(PostingRatio, UndefinedWithoutIncoming) {
  EXPECT_THROW(posting_ratio(ratio_corpus(3, 0), "u"), std::domain_error);
}

TEST(PostingRatio, BoundariesAreBalanced) {
  EXPECT_EQ(categorize_ratio(0.5), UserType::kBU);
  EXPECT_EQ(categorize_ratio(2.0), UserType::kBU);
  EXPECT_EQ(categorize_ratio(std::nextafter(0.5, 0.0)), UserType::kIS);
  EXPECT_EQ(categorize_ratio(std::nextafter(2.0, 3.0)), UserType::kIP);
}

TEST(PostingRatio, CategoriesExhaustiveAndExclusive) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double ratio = rng.uniform() * 5.0;
    const UserType t = categorize_ratio(ratio);
    const int matches = (ratio < 0.5) + (ratio > 2.0) + (ratio >= 0.5 && ratio <= 2.0);
    EXPECT_EQ(matches, 1);
    if (ratio < 0.5) EXPECT_EQ(t, UserType::kIS);
    if (ratio > 2.0) EXPECT_EQ(t, UserType::kIP);
    if (ratio >= 0.5 && ratio <= 2.0) EXPECT_EQ(t, UserType::kBU);
  }
}

// u retweets `retweets` originals of a (posted at time 0) at times 1..n; a
// also posts `pool` fresh tweets at times 20, 21, ...
Corpus split_corpus(int retweets, int pool) {
  std::vector<Tweet> tweets;
  for (int i = 1; i <= retweets; ++i) {
    const std::string text = "orig " + std::to_string(i);
    tweets.push_back(make_tweet("o" + std::to_string(i), "a", 0, text));
    tweets.push_back(make_tweet("rt" + std::to_string(i), "u", i, text, "a"));
  }
  for (int j = 0; j < pool; ++j) {
    tweets.push_back(make_tweet("n" + std::to_string(j), "a", 20 + j, "news " + std::to_string(j)));
  }
  tweets.push_back(make_tweet("own", "u", 5, "my own words"));
  SocialGraph g;
  g.add_edge("u", "a");
  return Corpus(std::move(tweets), std::move(g));
}

TEST(Split, MostRecentTwentyPercent) {
  const Corpus c = split_corpus(10, 12);
  const auto split = split_train_test(c, "u", SplitOptions{}, 11);
  EXPECT_EQ(split.split_timestamp, 9);
  std::set<std::string> positives;
  std::size_t negatives = 0;
  for (const auto& d : split.test_docs) {
    if (d.relevant) {
      positives.insert(d.tweet->id);
    } else {
      ++negatives;
      EXPECT_GE(d.tweet->timestamp, 9);
      EXPECT_FALSE(c.retweeted_by("u", *d.tweet));
    }
  }
  EXPECT_EQ(positives, (std::set<std::string>{"rt9", "rt10"}));
  EXPECT_EQ(negatives, 8u);
  EXPECT_TRUE(split.warnings.empty());
}

TEST(Split, TrainingIsBeforeSplitAndDisjoint) {
  const Corpus c = split_corpus(10, 12);
  const auto split = split_train_test(c, "u", SplitOptions{}, 5);
  std::set<std::string> test_ids;
  for (const auto& d : split.test_docs) test_ids.insert(d.tweet->id);
  for (const auto& [source, docs] : split.train_docs) {
    for (const auto& d : docs) {
      EXPECT_LT(d.tweet->timestamp, split.split_timestamp);
      EXPECT_FALSE(test_ids.contains(d.tweet->id)) << source_name(source);
      // The originals of held-out retweets must not leak into training.
      EXPECT_NE(d.tweet->id, "o9");
      EXPECT_NE(d.tweet->id, "o10");
    }
  }
}

TEST(Split, FiveRetweetsGiveOnePositive) {
  const Corpus c = split_corpus(5, 12);
  const auto split = split_train_test(c, "u", SplitOptions{}, 1);
  EXPECT_EQ(split.positives(), 1u);
  EXPECT_EQ(split.negatives(), 4u);
}

TEST(Split, ShortPoolWarns) {
  const Corpus c = split_corpus(5, 3);
  const auto split = split_train_test(c, "u", SplitOptions{}, 1);
  EXPECT_EQ(split.positives(), 1u);
  EXPECT_EQ(split.negatives(), 3u);
  EXPECT_FALSE(split.warnings.empty());
}

TEST(Split, TooFewRetweets) {
  const Corpus c = split_corpus(4, 12);
  EXPECT_THROW(split_train_test(c, "u", SplitOptions{}, 1), std::invalid_argument);
}

TEST(Split, SameSeedSameSplit) {
  const Corpus c = split_corpus(10, 40);
  const auto a = split_train_test(c, "u", SplitOptions{}, 1);
  const auto b = split_train_test(c, "u", SplitOptions{}, 1);
  ASSERT_EQ(a.test_docs.size(), b.test_docs.size());
  for (std::size_t i = 0; i < a.test_docs.size(); ++i) {
    EXPECT_EQ(a.test_docs[i].tweet->id, b.test_docs[i].tweet->id);
  }
}

TEST(Stoplist, TopKWithLexicographicTies) {
  const std::vector<std::vector<std::string>> docs{{"a", "a", "a", "a", "a", "b", "b", "b", "c"}};
  EXPECT_EQ(compute_stoplist_from_tokens(docs, 2), (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(compute_stoplist_from_tokens(docs, 0).empty());
  const std::vector<std::vector<std::string>> tie{{"b", "b", "a", "a"}};
  EXPECT_EQ(compute_stoplist_from_tokens(tie, 1), (std::set<std::string>{"a"}));
  EXPECT_EQ(compute_stoplist_from_tokens(docs, 10).size(), 3u);
}

TEST(CorpusIo, RoundTrip) {
  const Corpus c = small_corpus();
  std::stringstream tweets, graph;
  write_tweets_jsonl(tweets, c.tweets());
  write_graph_tsv(graph, c.graph());
  const auto back = read_tweets_jsonl(tweets);
  ASSERT_EQ(back.size(), c.tweets().size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, c.tweets()[i].id);
    EXPECT_EQ(back[i].text, c.tweets()[i].text);
    EXPECT_EQ(back[i].retweet_of, c.tweets()[i].retweet_of);
  }
  EXPECT_EQ(read_graph_tsv(graph).edge_count(), c.graph().edge_count());
}

TEST(CorpusIo, RejectsMissingKey) {
  std::stringstream in(R"({"id":"1","author":"u","text":"x"})" "\n");
  EXPECT_THROW(read_tweets_jsonl(in), std::runtime_error);
}

TEST(Corpus, RejectsDuplicateIds) {
  std::vector<Tweet> tweets{make_tweet("1", "u", 0, "x"), make_tweet("1", "v", 0, "y")};
  EXPECT_THROW(Corpus(std::move(tweets), SocialGraph{}), std::invalid_argument);
}

TEST(UserFilter, ThresholdsApply) {
  const Corpus c = split_corpus(10, 2);
  const std::vector<UserId> users{"u", "a"};
  UserFilter f;
  f.min_retweets = 5;
  EXPECT_EQ(filter_users(c, users, f), (std::vector<UserId>{"u"}));
}

}  // namespace
}  // namespace microrec
