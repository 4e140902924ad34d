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

#include "microrec/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "microrec/random.h"

namespace microrec {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr int kHashtagsPerTopic = 5;
constexpr std::array<std::string_view, 6> kEmoticons = {":)", ":(", ";)", ":D", "<3", ":p"};

std::string pad(std::size_t value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return digits;
}

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("synth spec: ") + what);
}

void validate(const SynthSpec& s) {
  check(s.num_users >= 2, "num_users must be >= 2");
  check(s.num_topics >= 1, "num_topics must be >= 1");
  check(s.vocab_partition >= 1, "vocab_partition must be >= 1");
  check(s.docs_per_user >= 1, "docs_per_user must be >= 1");
  check(s.tokens_per_doc >= 1, "tokens_per_doc must be >= 1");
  check(s.preference_sharpness >= 0.0, "preference_sharpness must be >= 0");
  check(s.followees_per_user >= 1, "followees_per_user must be >= 1");
  check(s.preference_concentration > 0.0, "preference_concentration must be > 0");
  check(s.background_words >= 0, "background_words must be >= 0");
  check(s.horizon >= 1000, "horizon must be >= 1000");
  for (double p : {s.retweet_rate, s.reciprocal_prob, s.background_prob, s.hashtag_prob, s.emoticon_prob,
                   s.question_prob, s.mention_prob}) {
    check(p >= 0.0 && p <= 1.0, "probabilities must lie in [0, 1]");
  }
  check(s.background_words > 0 || s.background_prob == 0.0,
        "background_prob needs background_words > 0");
}

}  // namespace

std::string synthetic_word(std::size_t index) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  // Offsetting by `base` gives every word at least two syllables.
  std::size_t value = index + base;
  std::string out;
  while (value > 0) {
    const std::size_t syllable = value % base;
    value /= base;
    out.insert(out.begin(), kVowels[syllable % kVowels.size()]);
    out.insert(out.begin(), kConsonants[syllable / kVowels.size()]);
  }
  return out;
}

SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec s;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    auto trim = [](std::string v) {
      const auto a = v.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return v.substr(a, v.find_last_not_of(" \t\r") - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::invalid_argument("synth line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "num_users") s.num_users = std::stoi(value);
      else if (key == "num_topics") s.num_topics = std::stoi(value);
      else if (key == "vocab_partition") s.vocab_partition = std::stoi(value);
      else if (key == "docs_per_user") s.docs_per_user = std::stoi(value);
      else if (key == "tokens_per_doc") s.tokens_per_doc = std::stoi(value);
      else if (key == "preference_sharpness") s.preference_sharpness = std::stod(value);
      else if (key == "seed") s.seed = std::stoull(value);
      else if (key == "followees_per_user") s.followees_per_user = std::stoi(value);
      else if (key == "reciprocal_prob") s.reciprocal_prob = std::stod(value);
      else if (key == "retweet_rate") s.retweet_rate = std::stod(value);
      else if (key == "preference_concentration") s.preference_concentration = std::stod(value);
      else if (key == "background_words") s.background_words = std::stoi(value);
      else if (key == "background_prob") s.background_prob = std::stod(value);
      else if (key == "hashtag_prob") s.hashtag_prob = std::stod(value);
      else if (key == "emoticon_prob") s.emoticon_prob = std::stod(value);
      else if (key == "question_prob") s.question_prob = std::stod(value);
      else if (key == "mention_prob") s.mention_prob = std::stod(value);
      else if (key == "horizon") s.horizon = std::stoll(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::logic_error& e) {
      throw std::invalid_argument("synth line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(s);
  return s;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synth spec " + path.string());
  return parse_synth_spec(in);
}

void write_synth_spec(std::ostream& out, const SynthSpec& s) {
  out << "num_users = " << s.num_users << '\n'
      << "num_topics = " << s.num_topics << '\n'
      << "vocab_partition = " << s.vocab_partition << '\n'
      << "docs_per_user = " << s.docs_per_user << '\n'
      << "tokens_per_doc = " << s.tokens_per_doc << '\n'
      << "preference_sharpness = " << s.preference_sharpness << '\n'
      << "seed = " << s.seed << '\n'
      << "followees_per_user = " << s.followees_per_user << '\n'
      << "reciprocal_prob = " << s.reciprocal_prob << '\n'
      << "retweet_rate = " << s.retweet_rate << '\n'
      << "preference_concentration = " << s.preference_concentration << '\n'
      << "background_words = " << s.background_words << '\n'
      << "background_prob = " << s.background_prob << '\n'
      << "hashtag_prob = " << s.hashtag_prob << '\n'
      << "emoticon_prob = " << s.emoticon_prob << '\n'
      << "question_prob = " << s.question_prob << '\n'
      << "mention_prob = " << s.mention_prob << '\n'
      << "horizon = " << s.horizon << '\n';
}

SynthCorpus generate_synthetic(const SynthSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  SynthCorpus out;
  SynthTruth& truth = out.truth;
  const auto num_topics = static_cast<std::size_t>(spec.num_topics);
  const auto partition = static_cast<std::size_t>(spec.vocab_partition);

  // Topic vocabularies come first, then hashtags, then the shared filler.
  std::size_t next_word = 0;
  truth.phi.assign(num_topics, {});
  for (std::size_t k = 0; k < num_topics; ++k) {
    std::vector<double> ones(partition, 1.0);
    const auto weights = rng.dirichlet(ones);
    for (std::size_t j = 0; j < partition; ++j) truth.vocabulary.push_back(synthetic_word(next_word++));
    truth.phi[k].assign(num_topics * partition, 0.0);
    std::copy(weights.begin(), weights.end(), truth.phi[k].begin() + static_cast<std::ptrdiff_t>(k * partition));
  }
  std::vector<std::vector<std::string>> hashtags(num_topics);
  for (auto& tags : hashtags) {
    for (int j = 0; j < kHashtagsPerTopic; ++j) tags.push_back("#" + synthetic_word(next_word++));
  }
  std::vector<std::string> filler;
  for (int j = 0; j < spec.background_words; ++j) filler.push_back(synthetic_word(next_word++));

  const auto num_users = static_cast<std::size_t>(spec.num_users);
  for (std::size_t u = 0; u < num_users; ++u) truth.users.push_back("u" + pad(u, 3));
  std::vector<double> concentration(num_topics, spec.preference_concentration);
  for (std::size_t u = 0; u < num_users; ++u) truth.preferences.push_back(rng.dirichlet(concentration));

  for (std::size_t u = 0; u < num_users; ++u) {
    std::vector<std::size_t> others;
    for (std::size_t v = 0; v < num_users; ++v) {
      if (v != u) others.push_back(v);
    }
    rng.shuffle(others);
    const int spread = spec.followees_per_user / 2;
    int count = spec.followees_per_user - spread +
                static_cast<int>(rng.uniform_int(static_cast<uint64_t>(2 * spread + 1)));
    count = std::clamp(count, 1, static_cast<int>(others.size()));
    for (int i = 0; i < count; ++i) {
      out.graph.add_edge(truth.users[u], truth.users[others[static_cast<std::size_t>(i)]]);
    }
  }
  for (const auto& [follower, followee] : out.graph.edges()) {
    if (rng.bernoulli(spec.reciprocal_prob) && !out.graph.followees(followee).contains(follower)) {
      out.graph.add_edge(followee, follower);
    }
  }

  std::size_t next_id = 0;
  auto new_id = [&] { return "t" + pad(next_id++, 7); };
  const auto horizon = static_cast<uint64_t>(spec.horizon);
  std::vector<std::vector<std::size_t>> by_author(num_users);
  for (std::size_t u = 0; u < num_users; ++u) {
    const double activity = std::exp(1.4 * rng.uniform() - 0.7);
    const auto docs = std::max<long>(5, std::lround(spec.docs_per_user * activity));
    for (long i = 0; i < docs; ++i) {
      const std::size_t k = rng.categorical(truth.preferences[u]);
      std::string text;
      if (rng.bernoulli(spec.mention_prob)) {
        text += "@" + truth.users[rng.uniform_int(num_users)] + " ";
      }
      for (int j = 0; j < spec.tokens_per_doc; ++j) {
        if (j > 0) text += ' ';
        if (rng.bernoulli(spec.background_prob)) {
          text += filler[rng.uniform_int(filler.size())];
        } else {
          const std::size_t w = rng.categorical(
              std::span<const double>(truth.phi[k]).subspan(k * partition, partition));
          text += truth.vocabulary[k * partition + w];
        }
      }
      if (rng.bernoulli(spec.hashtag_prob)) text += " " + hashtags[k][rng.uniform_int(hashtags[k].size())];
      if (rng.bernoulli(spec.emoticon_prob)) {
        text += " ";
        text += kEmoticons[rng.uniform_int(kEmoticons.size())];
      }
      if (rng.bernoulli(spec.question_prob)) text += "?";
      Tweet t;
      t.id = new_id();
      t.author = truth.users[u];
      t.timestamp = static_cast<int64_t>(rng.uniform_int(horizon));
      t.text = std::move(text);
      truth.tweet_topic.emplace(t.id, static_cast<int>(k));
      by_author[u].push_back(out.tweets.size());
      out.tweets.push_back(std::move(t));
    }
  }

  // Retweets of followees' originals, likelier the better the topic matches.
  for (std::size_t u = 0; u < num_users; ++u) {
    const auto& pref = truth.preferences[u];
    const double top = *std::max_element(pref.begin(), pref.end());
    for (const UserId& v : out.graph.followees(truth.users[u])) {
      const auto vi = static_cast<std::size_t>(std::stoul(v.substr(1)));
      for (std::size_t idx : by_author[vi]) {
        const auto k = static_cast<std::size_t>(truth.tweet_topic.at(out.tweets[idx].id));
        const double p = spec.retweet_rate * std::pow(pref[k] / top, spec.preference_sharpness);
        if (!rng.bernoulli(p)) continue;
        Tweet rt;
        rt.id = new_id();
        rt.author = truth.users[u];
        rt.retweet_of = out.tweets[idx].author;
        rt.text = out.tweets[idx].text;
        rt.timestamp = out.tweets[idx].timestamp + 1 +
                       static_cast<int64_t>(rng.uniform_int(horizon / 200));
        out.tweets.push_back(std::move(rt));
      }
    }
  }
  return out;
}

}  // namespace microrec
