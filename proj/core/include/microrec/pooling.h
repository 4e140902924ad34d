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

#ifndef MICROREC_POOLING_H_
#define MICROREC_POOLING_H_

#include <map>
#include <set>
#include <stdexcept>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "microrec/corpus.h"

namespace microrec {

enum class Pooling { kNP, kUP, kHP };

std::string_view pooling_name(Pooling scheme);
Pooling parse_pooling(std::string_view name);

// A tweet together with its preprocessed tokens.
struct TokenizedTweet {
  const Tweet* tweet = nullptr;
  std::vector<std::string> tokens;
};

struct PooledCorpus {
  Pooling scheme = Pooling::kNP;
  std::vector<std::vector<std::string>> docs;
  // Ids of the tweets that contributed to each pooled document.
  std::vector<std::vector<TweetId>> provenance;
};

// NP: one document per tweet. UP: one per author. HP: one per hashtag (a tweet
// with k hashtags feeds all k documents, hashtag tokens included) plus one per
// hashtag-less tweet. Documents appear in order of their key's first
// occurrence in `tweets`.
PooledCorpus pool(std::span<const TokenizedTweet> tweets, Pooling scheme);

// Observed LLDA labels. `per_doc` maps a tweet id to its label names Λ_d.
struct LabelSet {
  std::set<std::string> labels;
  std::map<TweetId, std::set<std::string>> per_doc;
};

inline constexpr int kLabelVariations = 10;

// Label catalogue: every hashtag with more than `hashtag_min_count`
// occurrences; "?"; one label per emoticon category; "@user" for tweets whose
// first token is a mention. Frequent label kinds come in ten variations
// ("?-3", ":(-7", "@user-0") chosen by a stable hash of the tweet id; big grin,
// heart, surprise and confused emoticons and hashtags have none. Only labels
// observed in at least one tweet are included. Throws if
// hashtag_min_count < 1.
LabelSet extract_llda_labels(std::span<const TokenizedTweet> tweets, int hashtag_min_count);

// Label sets of pooled documents: union over contributing tweets.
std::vector<std::set<std::string>> pooled_labels(const PooledCorpus& pooled,
                                                 const LabelSet& labels);

// Unordered word pairs. window_r == 0 means the whole document (all position
// pairs); otherwise positions i < j with j - i < window_r. Pairs are stored
// with the smaller value first.
inline constexpr int kWholeDocument = 0;

template <typename T>
std::vector<std::pair<T, T>> extract_biterms(std::span<const T> tokens, int window_r) {
  if (window_r != kWholeDocument && window_r < 2) {
    throw std::invalid_argument("extract_biterms: window must be >= 2 or whole-document");
  }
  std::vector<std::pair<T, T>> biterms;
  const std::size_t size = tokens.size();
  for (std::size_t i = 0; i + 1 < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (window_r != kWholeDocument && j - i >= static_cast<std::size_t>(window_r)) break;
      const T& a = tokens[i];
      const T& b = tokens[j];
      biterms.emplace_back(a < b ? a : b, a < b ? b : a);
    }
  }
  return biterms;
}

}  // namespace microrec

#endif  // MICROREC_POOLING_H_
