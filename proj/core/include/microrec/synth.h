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

#ifndef MICROREC_SYNTH_H_
#define MICROREC_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "microrec/corpus.h"

namespace microrec {

// Parameters of the synthetic microblog generator. The file form is one
// "key = value" per line with the field names below.
struct SynthSpec {
  int num_users = 30;
  int num_topics = 4;
  // Words owned by each topic; topic vocabularies are disjoint.
  int vocab_partition = 150;
  // Mean number of original tweets per user.
  int docs_per_user = 60;
  int tokens_per_doc = 8;
  // Exponent applied to the preference ratio in the retweet probability.
  double preference_sharpness = 3.0;
  uint64_t seed = 1;

  int followees_per_user = 6;
  // Chance that a followee follows back.
  double reciprocal_prob = 0.5;
  double retweet_rate = 0.5;
  // Concentration of the Dirichlet behind user topic preferences.
  double preference_concentration = 0.3;
  // Shared filler vocabulary mixed into every tweet.
  int background_words = 40;
  double background_prob = 0.25;
  double hashtag_prob = 0.3;
  double emoticon_prob = 0.1;
  double question_prob = 0.1;
  double mention_prob = 0.1;
  int64_t horizon = 10'000'000;
};

SynthSpec parse_synth_spec(std::istream& in);
SynthSpec load_synth_spec(const std::filesystem::path& path);
void write_synth_spec(std::ostream& out, const SynthSpec& spec);

struct SynthTruth {
  std::vector<std::string> vocabulary;
  // Word distribution of every topic over `vocabulary`.
  std::vector<std::vector<double>> phi;
  // Topic preferences of every user (index = user position in `users`).
  std::vector<UserId> users;
  std::vector<std::vector<double>> preferences;
  // Topic of every original tweet.
  std::map<TweetId, int> tweet_topic;
};

struct SynthCorpus {
  std::vector<Tweet> tweets;
  SocialGraph graph;
  SynthTruth truth;
};

// Throws std::invalid_argument on degenerate specs (no users or topics,
// probabilities outside [0,1], ...). Output depends only on `spec`.
SynthCorpus generate_synthetic(const SynthSpec& spec);

// Pronounceable word for an index, built from consonant-vowel syllables.
std::string synthetic_word(std::size_t index);

}  // namespace microrec

#endif  // MICROREC_SYNTH_H_
