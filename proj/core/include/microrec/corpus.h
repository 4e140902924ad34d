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

#ifndef MICROREC_CORPUS_H_
#define MICROREC_CORPUS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace microrec {

using UserId = std::string;
using TweetId = std::string;

struct Tweet {
  TweetId id;
  UserId author;
  int64_t timestamp = 0;
  std::string text;
  // Author of the original post; set iff this tweet is a retweet.
  std::optional<UserId> retweet_of;
  // Set for tweets whose text is empty.
  bool degenerate = false;

  bool is_retweet() const { return retweet_of.has_value(); }
  // Author of the content: the original author for retweets.
  const UserId& origin() const { return retweet_of ? *retweet_of : author; }
};

// Directed follow relation with both adjacency directions kept in sync.
class SocialGraph {
 public:
  // Throws std::invalid_argument on self edges.
  void add_edge(const UserId& follower, const UserId& followee);

  // e(u)
  const std::set<UserId>& followees(const UserId& user) const;
  // f(u)
  const std::set<UserId>& followers(const UserId& user) const;
  // e(u) ∩ f(u)
  std::set<UserId> reciprocal(const UserId& user) const;

  bool contains(const UserId& user) const;
  std::size_t edge_count() const { return edges_; }
  // (follower, followee) pairs in canonical order.
  std::vector<std::pair<UserId, UserId>> edges() const;

 private:
  std::map<UserId, std::set<UserId>> followees_;
  std::map<UserId, std::set<UserId>> followers_;
  std::size_t edges_ = 0;
};

// Immutable set of tweets plus the social graph. Tweets are indexed by id and
// by author; per-author lists are sorted by (timestamp, id).
class Corpus {
 public:
  // Throws std::invalid_argument on duplicate ids, negative timestamps or
  // empty text that is not flagged degenerate.
  Corpus(std::vector<Tweet> tweets, SocialGraph graph);

  // Indices hold pointers into the tweet vector, so copies are disabled.
  Corpus(const Corpus&) = delete;
  Corpus& operator=(const Corpus&) = delete;
  Corpus(Corpus&&) = default;
  Corpus& operator=(Corpus&&) = default;

  const std::vector<Tweet>& tweets() const { return tweets_; }
  const SocialGraph& graph() const { return graph_; }

  const Tweet* find(const TweetId& id) const;
  std::size_t index_of(const Tweet& tweet) const;

  bool has_user(const UserId& user) const;
  // Every user that authored a tweet or appears in the graph, sorted.
  std::vector<UserId> users() const;

  // T(u): tweets of u that are not retweets.
  std::span<const Tweet* const> own_tweets(const UserId& user) const;
  // R(u): retweets posted by u.
  std::span<const Tweet* const> retweets(const UserId& user) const;
  // R(u) ∪ T(u).
  std::span<const Tweet* const> authored(const UserId& user) const;

  // Whether `user` reposted the content of `tweet` (matched on original author
  // and text). A user's own posts are never "retweeted by" that user.
  bool retweeted_by(const UserId& user, const Tweet& tweet) const;

 private:
  struct AuthorIndex {
    std::vector<const Tweet*> own;
    std::vector<const Tweet*> retweets;
    std::vector<const Tweet*> all;
    std::set<std::pair<UserId, std::string>> retweet_keys;
  };

  const AuthorIndex* author_index(const UserId& user) const;

  std::vector<Tweet> tweets_;
  SocialGraph graph_;
  std::unordered_map<TweetId, std::size_t> by_id_;
  std::map<UserId, AuthorIndex> by_author_;
};

// ---------------------------------------------------------------------------
// Representation sources

enum class Source { kT, kR, kE, kF, kC, kTR, kTE, kRE, kEF, kTF, kRF, kTC, kRC };

inline constexpr std::array<Source, 13> kAllSources = {
    Source::kT,  Source::kR,  Source::kE,  Source::kF,  Source::kC,
    Source::kTR, Source::kTE, Source::kRE, Source::kEF, Source::kTF,
    Source::kRF, Source::kTC, Source::kRC};

std::string_view source_name(Source source);
// Throws std::invalid_argument on unknown names.
Source parse_source(std::string_view name);
// The atomic sources (T, R, E, F, C) a composite is the union of.
std::vector<Source> source_atoms(Source source);
// Sources built from incoming tweets, whose non-retweeted members serve as
// negative examples: C, E, TE, RE, TC, RC, EF.
bool source_has_negatives(Source source);

struct SourceDoc {
  const Tweet* tweet = nullptr;
  bool positive = true;
};

// s(u), sorted by (timestamp, id) and deduplicated by tweet id.
// Throws std::invalid_argument if the user is unknown.
std::vector<const Tweet*> build_source(const Corpus& corpus, const UserId& user, Source source);

// s(u) with relevance labels: tweets that reached u through E or C are
// positive iff u retweeted them; everything else is positive.
std::vector<SourceDoc> build_labeled_source(const Corpus& corpus, const UserId& user,
                                            Source source);

// ---------------------------------------------------------------------------
// User categories

enum class UserType { kIS, kBU, kIP };

std::string_view user_type_name(UserType type);

struct UserCategory {
  double ratio = 0.0;
  UserType type = UserType::kBU;
};

// IS iff ratio < 0.5, IP iff ratio > 2, BU otherwise.
UserType categorize_ratio(double ratio);

// |R(u) ∪ T(u)| / |E(u)|. Throws std::domain_error("undefined ratio") when
// E(u) is empty.
UserCategory posting_ratio(const Corpus& corpus, const UserId& user);

// Dataset-curation filters; zero disables a threshold.
struct UserFilter {
  std::size_t min_followers = 0;
  std::size_t min_followees = 0;
  std::size_t min_retweets = 0;
};

std::vector<UserId> filter_users(const Corpus& corpus, std::span<const UserId> users,
                                 const UserFilter& filter);

// ---------------------------------------------------------------------------
// Train/test split

struct TestDoc {
  const Tweet* tweet = nullptr;
  bool relevant = false;
};

struct SplitOptions {
  int negative_ratio = 4;
  // Sources for which training documents are materialised.
  std::vector<Source> sources{kAllSources.begin(), kAllSources.end()};
};

struct TrainTestSplit {
  UserId user;
  int64_t split_timestamp = 0;
  std::map<Source, std::vector<SourceDoc>> train_docs;
  // Sorted by (timestamp, id).
  std::vector<TestDoc> test_docs;
  std::vector<std::string> warnings;

  std::size_t positives() const;
  std::size_t negatives() const;
};

inline constexpr std::size_t kMinRetweetsForSplit = 5;

// Chronological split: the ceil(20%) most recent retweets of the user are the
// test positives; `negative_ratio` negatives per positive are sampled from the
// user's non-retweeted incoming tweets posted at or after the earliest test
// positive. Throws std::invalid_argument when the user has fewer than five
// retweets or negative_ratio < 1. A short negative pool is a warning.
TrainTestSplit split_train_test(const Corpus& corpus, const UserId& user,
                                const SplitOptions& options, uint64_t seed);

// The k most frequent tokens (ties broken lexicographically).
std::set<std::string> compute_stoplist(std::span<const Tweet* const> training_tweets,
                                       std::size_t k);
std::set<std::string> compute_stoplist_from_tokens(
    std::span<const std::vector<std::string>> token_lists, std::size_t k);

}  // namespace microrec

#endif  // MICROREC_CORPUS_H_
