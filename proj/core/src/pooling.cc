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

#include "microrec/pooling.h"

#include <stdexcept>
#include <unordered_map>

#include "microrec/random.h"
#include "microrec/text.h"

namespace microrec {
namespace {

std::string variation(std::string_view base, const TweetId& id) {
  return std::string(base) + "-" + std::to_string(fnv1a64(id) % kLabelVariations);
}

}  // namespace

std::string_view pooling_name(Pooling scheme) {
  switch (scheme) {
    case Pooling::kNP: return "NP";
    case Pooling::kUP: return "UP";
    case Pooling::kHP: return "HP";
  }
  return "?";
}

Pooling parse_pooling(std::string_view name) {
  if (name == "NP") return Pooling::kNP;
  if (name == "UP") return Pooling::kUP;
  if (name == "HP") return Pooling::kHP;
  throw std::invalid_argument("unknown pooling scheme '" + std::string(name) + "'");
}

PooledCorpus pool(std::span<const TokenizedTweet> tweets, Pooling scheme) {
  PooledCorpus pooled;
  pooled.scheme = scheme;
  std::unordered_map<std::string, std::size_t> slot;
  auto doc_for = [&](const std::string& key) -> std::size_t {
    auto [it, inserted] = slot.emplace(key, pooled.docs.size());
    if (inserted) {
      pooled.docs.emplace_back();
      pooled.provenance.emplace_back();
    }
    return it->second;
  };
  auto append = [&](std::size_t d, const TokenizedTweet& t) {
    pooled.docs[d].insert(pooled.docs[d].end(), t.tokens.begin(), t.tokens.end());
    pooled.provenance[d].push_back(t.tweet->id);
  };

  for (const TokenizedTweet& t : tweets) {
    switch (scheme) {
      case Pooling::kNP:
        pooled.docs.push_back(t.tokens);
        pooled.provenance.push_back({t.tweet->id});
        break;
      case Pooling::kUP:
        append(doc_for("u\x1f" + t.tweet->author), t);
        break;
      case Pooling::kHP: {
        std::set<std::string> tags;
        for (const auto& token : t.tokens) {
          if (is_hashtag(token)) tags.insert(token);
        }
        if (tags.empty()) {
          append(doc_for("t\x1f" + t.tweet->id), t);
        } else {
          // Follow token order so documents appear in first-occurrence order.
          std::set<std::string> placed;
          for (const auto& token : t.tokens) {
            if (tags.contains(token) && placed.insert(token).second) {
              append(doc_for("h\x1f" + token), t);
            }
          }
        }
        break;
      }
    }
  }
  return pooled;
}

LabelSet extract_llda_labels(std::span<const TokenizedTweet> tweets, int hashtag_min_count) {
  if (hashtag_min_count < 1) {
    throw std::invalid_argument("hashtag_min_count must be >= 1");
  }
  std::unordered_map<std::string, int> hashtag_counts;
  for (const TokenizedTweet& t : tweets) {
    for (const auto& token : t.tokens) {
      if (is_hashtag(token)) ++hashtag_counts[token];
    }
  }

  LabelSet out;
  for (const TokenizedTweet& t : tweets) {
    std::set<std::string> labels;
    const TweetId& id = t.tweet->id;
    for (const auto& token : t.tokens) {
      if (is_hashtag(token)) {
        if (hashtag_counts[token] > hashtag_min_count) labels.insert(token);
      } else if (auto category = emoticon_category(token)) {
        const std::string_view base = emoticon_label(*category);
        labels.insert(emoticon_has_variations(*category) ? variation(base, id)
                                                         : std::string(base));
      }
    }
    if (t.tweet->text.find('?') != std::string::npos) labels.insert(variation("?", id));
    if (!t.tokens.empty() && is_mention(t.tokens.front())) {
      labels.insert(variation("@user", id));
    }
    if (!labels.empty()) {
      out.labels.insert(labels.begin(), labels.end());
      out.per_doc.emplace(id, std::move(labels));
    }
  }
  return out;
}

std::vector<std::set<std::string>> pooled_labels(const PooledCorpus& pooled,
                                                 const LabelSet& labels) {
  std::vector<std::set<std::string>> out(pooled.docs.size());
  for (std::size_t d = 0; d < pooled.docs.size(); ++d) {
    for (const TweetId& id : pooled.provenance[d]) {
      auto it = labels.per_doc.find(id);
      if (it != labels.per_doc.end()) out[d].insert(it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace microrec
