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

#include "microrec/corpus.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "microrec/random.h"
#include "microrec/text.h"

namespace microrec {
namespace {

const std::set<UserId> kNoUsers;

bool chronological(const Tweet* a, const Tweet* b) {
  if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
  return a->id < b->id;
}

std::pair<UserId, std::string> content_key(const Tweet& t) { return {t.origin(), t.text}; }

}  // namespace

// ---------------------------------------------------------------------------
// SocialGraph

void SocialGraph::add_edge(const UserId& follower, const UserId& followee) {
  if (follower == followee) {
    throw std::invalid_argument("social graph: self edge for user '" + follower + "'");
  }
  if (followees_[follower].insert(followee).second) {
    followers_[followee].insert(follower);
    ++edges_;
  }
  // Make both endpoints known even if they have no edges in one direction.
  followers_.try_emplace(follower);
  followees_.try_emplace(followee);
}

const std::set<UserId>& SocialGraph::followees(const UserId& user) const {
  auto it = followees_.find(user);
  return it == followees_.end() ? kNoUsers : it->second;
}

const std::set<UserId>& SocialGraph::followers(const UserId& user) const {
  auto it = followers_.find(user);
  return it == followers_.end() ? kNoUsers : it->second;
}

std::set<UserId> SocialGraph::reciprocal(const UserId& user) const {
  const auto& out = followees(user);
  const auto& in = followers(user);
  std::set<UserId> both;
  std::set_intersection(out.begin(), out.end(), in.begin(), in.end(),
                        std::inserter(both, both.end()));
  return both;
}

bool SocialGraph::contains(const UserId& user) const {
  return followees_.contains(user) || followers_.contains(user);
}

std::vector<std::pair<UserId, UserId>> SocialGraph::edges() const {
  std::vector<std::pair<UserId, UserId>> out;
  out.reserve(edges_);
  for (const auto& [follower, targets] : followees_) {
    for (const auto& followee : targets) out.emplace_back(follower, followee);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

Corpus::Corpus(std::vector<Tweet> tweets, SocialGraph graph)
    : tweets_(std::move(tweets)), graph_(std::move(graph)) {
  by_id_.reserve(tweets_.size());
  for (std::size_t i = 0; i < tweets_.size(); ++i) {
    Tweet& t = tweets_[i];
    if (t.timestamp < 0) {
      throw std::invalid_argument("tweet '" + t.id + "': negative timestamp");
    }
    if (t.text.empty()) {
      if (!t.degenerate) {
        throw std::invalid_argument("tweet '" + t.id + "': empty text not flagged degenerate");
      }
    }
    if (!by_id_.emplace(t.id, i).second) {
      throw std::invalid_argument("duplicate tweet id '" + t.id + "'");
    }
  }
  for (const Tweet& t : tweets_) {
    AuthorIndex& index = by_author_[t.author];
    index.all.push_back(&t);
    if (t.is_retweet()) {
      index.retweets.push_back(&t);
      index.retweet_keys.insert(content_key(t));
    } else {
      index.own.push_back(&t);
    }
  }
  for (auto& [author, index] : by_author_) {
    std::sort(index.all.begin(), index.all.end(), chronological);
    std::sort(index.own.begin(), index.own.end(), chronological);
    std::sort(index.retweets.begin(), index.retweets.end(), chronological);
  }
}

const Tweet* Corpus::find(const TweetId& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &tweets_[it->second];
}

std::size_t Corpus::index_of(const Tweet& tweet) const {
  return static_cast<std::size_t>(&tweet - tweets_.data());
}

bool Corpus::has_user(const UserId& user) const {
  return by_author_.contains(user) || graph_.contains(user);
}

std::vector<UserId> Corpus::users() const {
  std::set<UserId> all;
  for (const auto& [author, index] : by_author_) all.insert(author);
  for (const auto& [follower, followee] : graph_.edges()) {
    all.insert(follower);
    all.insert(followee);
  }
  return {all.begin(), all.end()};
}

const Corpus::AuthorIndex* Corpus::author_index(const UserId& user) const {
  auto it = by_author_.find(user);
  return it == by_author_.end() ? nullptr : &it->second;
}

std::span<const Tweet* const> Corpus::own_tweets(const UserId& user) const {
  const AuthorIndex* index = author_index(user);
  return index ? std::span<const Tweet* const>(index->own) : std::span<const Tweet* const>();
}

std::span<const Tweet* const> Corpus::retweets(const UserId& user) const {
  const AuthorIndex* index = author_index(user);
  return index ? std::span<const Tweet* const>(index->retweets)
               : std::span<const Tweet* const>();
}

std::span<const Tweet* const> Corpus::authored(const UserId& user) const {
  const AuthorIndex* index = author_index(user);
  return index ? std::span<const Tweet* const>(index->all) : std::span<const Tweet* const>();
}

bool Corpus::retweeted_by(const UserId& user, const Tweet& tweet) const {
  if (tweet.author == user) return false;
  const AuthorIndex* index = author_index(user);
  return index && index->retweet_keys.contains(content_key(tweet));
}

// ---------------------------------------------------------------------------
// Sources

std::string_view source_name(Source source) {
  switch (source) {
    case Source::kT: return "T";
    case Source::kR: return "R";
    case Source::kE: return "E";
    case Source::kF: return "F";
    case Source::kC: return "C";
    case Source::kTR: return "TR";
    case Source::kTE: return "TE";
    case Source::kRE: return "RE";
    case Source::kEF: return "EF";
    case Source::kTF: return "TF";
    case Source::kRF: return "RF";
    case Source::kTC: return "TC";
    case Source::kRC: return "RC";
  }
  return "?";
}

Source parse_source(std::string_view name) {
  for (Source s : kAllSources) {
    if (source_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown representation source '" + std::string(name) + "'");
}

std::vector<Source> source_atoms(Source source) {
  switch (source) {
    case Source::kT:
    case Source::kR:
    case Source::kE:
    case Source::kF:
    case Source::kC: return {source};
    case Source::kTR: return {Source::kT, Source::kR};
    case Source::kTE: return {Source::kT, Source::kE};
    case Source::kRE: return {Source::kR, Source::kE};
    case Source::kEF: return {Source::kE, Source::kF};
    case Source::kTF: return {Source::kT, Source::kF};
    case Source::kRF: return {Source::kR, Source::kF};
    case Source::kTC: return {Source::kT, Source::kC};
    case Source::kRC: return {Source::kR, Source::kC};
  }
  return {};
}

bool source_has_negatives(Source source) {
  for (Source atom : source_atoms(source)) {
    if (atom == Source::kE || atom == Source::kC) return true;
  }
  return false;
}

std::vector<SourceDoc> build_labeled_source(const Corpus& corpus, const UserId& user,
                                            Source source) {
  if (!corpus.has_user(user)) {
    throw std::invalid_argument("unknown user '" + user + "'");
  }
  std::unordered_map<const Tweet*, bool> labels;
  auto add = [&](std::span<const Tweet* const> tweets, bool incoming) {
    for (const Tweet* t : tweets) {
      const bool positive = !incoming || corpus.retweeted_by(user, *t);
      auto [it, inserted] = labels.emplace(t, positive);
      // A negative label from an incoming atom overrides a positive one.
      if (!inserted && !positive) it->second = false;
    }
  };
  const SocialGraph& graph = corpus.graph();
  for (Source atom : source_atoms(source)) {
    switch (atom) {
      case Source::kT: add(corpus.own_tweets(user), false); break;
      case Source::kR: add(corpus.retweets(user), false); break;
      case Source::kE:
        for (const UserId& v : graph.followees(user)) add(corpus.authored(v), true);
        break;
      case Source::kF:
        for (const UserId& v : graph.followers(user)) add(corpus.authored(v), false);
        break;
      case Source::kC:
        for (const UserId& v : graph.reciprocal(user)) add(corpus.authored(v), true);
        break;
      default: break;
    }
  }
  std::vector<SourceDoc> docs;
  docs.reserve(labels.size());
  for (const auto& [tweet, positive] : labels) docs.push_back({tweet, positive});
  std::sort(docs.begin(), docs.end(), [](const SourceDoc& a, const SourceDoc& b) {
    return chronological(a.tweet, b.tweet);
  });
  return docs;
}

std::vector<const Tweet*> build_source(const Corpus& corpus, const UserId& user, Source source) {
  std::vector<const Tweet*> out;
  for (const SourceDoc& doc : build_labeled_source(corpus, user, source)) {
    out.push_back(doc.tweet);
  }
  return out;
}

// ---------------------------------------------------------------------------
// User categories

std::string_view user_type_name(UserType type) {
  switch (type) {
    case UserType::kIS: return "IS";
    case UserType::kBU: return "BU";
    case UserType::kIP: return "IP";
  }
  return "?";
}

UserType categorize_ratio(double ratio) {
  if (ratio < 0.5) return UserType::kIS;
  if (ratio > 2.0) return UserType::kIP;
  return UserType::kBU;
}

UserCategory posting_ratio(const Corpus& corpus, const UserId& user) {
  if (!corpus.has_user(user)) {
    throw std::invalid_argument("unknown user '" + user + "'");
  }
  std::size_t incoming = 0;
  for (const UserId& v : corpus.graph().followees(user)) incoming += corpus.authored(v).size();
  if (incoming == 0) throw std::domain_error("undefined ratio");
  UserCategory category;
  category.ratio = static_cast<double>(corpus.authored(user).size()) /
                   static_cast<double>(incoming);
  category.type = categorize_ratio(category.ratio);
  return category;
}

std::vector<UserId> filter_users(const Corpus& corpus, std::span<const UserId> users,
                                 const UserFilter& filter) {
  std::vector<UserId> kept;
  for (const UserId& u : users) {
    if (corpus.graph().followers(u).size() < filter.min_followers) continue;
    if (corpus.graph().followees(u).size() < filter.min_followees) continue;
    if (corpus.retweets(u).size() < filter.min_retweets) continue;
    kept.push_back(u);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Split

std::size_t TrainTestSplit::positives() const {
  return static_cast<std::size_t>(
      std::count_if(test_docs.begin(), test_docs.end(), [](const TestDoc& d) { return d.relevant; }));
}

std::size_t TrainTestSplit::negatives() const { return test_docs.size() - positives(); }

TrainTestSplit split_train_test(const Corpus& corpus, const UserId& user,
                                const SplitOptions& options, uint64_t seed) {
  if (!corpus.has_user(user)) {
    throw std::invalid_argument("unknown user '" + user + "'");
  }
  if (options.negative_ratio < 1) {
    throw std::invalid_argument("negative_ratio must be >= 1");
  }
  const auto retweets = corpus.retweets(user);
  if (retweets.size() < kMinRetweetsForSplit) {
    throw std::invalid_argument("user '" + user + "' has fewer than 5 retweets");
  }

  TrainTestSplit split;
  split.user = user;

  // Retweets are sorted by (timestamp, id); the tail holds the most recent,
  // with the higher id winning among equal timestamps.
  const std::size_t num_positive = (retweets.size() + 4) / 5;
  const auto positives = retweets.subspan(retweets.size() - num_positive);
  split.split_timestamp = positives.front()->timestamp;

  std::set<std::pair<UserId, std::string>> held_out;
  for (const Tweet* t : positives) {
    split.test_docs.push_back({t, true});
    held_out.insert(content_key(*t));
  }

  std::vector<const Tweet*> pool;
  for (const UserId& v : corpus.graph().followees(user)) {
    for (const Tweet* t : corpus.authored(v)) {
      if (t->timestamp >= split.split_timestamp && !corpus.retweeted_by(user, *t)) {
        pool.push_back(t);
      }
    }
  }
  std::sort(pool.begin(), pool.end(), chronological);
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  const std::size_t wanted = num_positive * static_cast<std::size_t>(options.negative_ratio);
  if (pool.size() < wanted) {
    split.warnings.push_back("user '" + user + "': negative pool has " +
                             std::to_string(pool.size()) + " tweets, wanted " +
                             std::to_string(wanted));
  }
  Rng rng(seed);
  rng.shuffle(pool);
  pool.resize(std::min(pool.size(), wanted));
  for (const Tweet* t : pool) split.test_docs.push_back({t, false});
  std::sort(split.test_docs.begin(), split.test_docs.end(),
            [](const TestDoc& a, const TestDoc& b) { return chronological(a.tweet, b.tweet); });

  for (Source source : options.sources) {
    std::vector<SourceDoc> docs;
    for (const SourceDoc& doc : build_labeled_source(corpus, user, source)) {
      if (doc.tweet->timestamp >= split.split_timestamp) continue;
      // Originals of held-out retweets would leak the test labels.
      if (held_out.contains(content_key(*doc.tweet))) continue;
      docs.push_back(doc);
    }
    split.train_docs.emplace(source, std::move(docs));
  }
  return split;
}

// ---------------------------------------------------------------------------
// Stoplist

std::set<std::string> compute_stoplist_from_tokens(
    std::span<const std::vector<std::string>> token_lists, std::size_t k) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& tokens : token_lists) {
    for (const auto& token : tokens) ++counts[token];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::set<std::string> stoplist;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) stoplist.insert(ranked[i].first);
  return stoplist;
}

std::set<std::string> compute_stoplist(std::span<const Tweet* const> training_tweets,
                                       std::size_t k) {
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(training_tweets.size());
  for (const Tweet* t : training_tweets) token_lists.push_back(tokenize(t->text));
  return compute_stoplist_from_tokens(token_lists, k);
}

}  // namespace microrec
