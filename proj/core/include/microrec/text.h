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

#ifndef MICROREC_TEXT_H_
#define MICROREC_TEXT_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace microrec {

// Emoticon categories recognised by the tokenizer and used as LLDA labels.
enum class Emoticon {
  kSmile,
  kFrown,
  kWink,
  kBigGrin,
  kHeart,
  kSurprise,
  kAwkward,
  kConfused,
  kTongue,
};

inline constexpr int kNumEmoticonCategories = 9;

// Category of a (lowercased) emoticon glyph, e.g. ":-)" -> kSmile.
std::optional<Emoticon> emoticon_category(std::string_view glyph);

// Canonical glyph naming the category (":)", ":(", ";)", ":d", "<3", ":o",
// ":/", ":s", ":p").
std::string_view emoticon_label(Emoticon category);

// Whether the category is split into ten label variations.
bool emoticon_has_variations(Emoticon category);

// Lowercases ASCII letters; other bytes pass through untouched.
std::string to_lower(std::string_view text);

// Squeezes every run of three or more identical code points down to two.
std::string squeeze_repeats(std::string_view text);

// Splits a tweet into lowercase tokens. URLs, #hashtags, @mentions and
// emoticons survive as single tokens; any other punctuation separates tokens
// and is dropped. Runs of >= 3 identical characters are squeezed to 2
// (URLs and emoticons are kept verbatim).
std::vector<std::string> tokenize(std::string_view text);

bool is_hashtag(std::string_view token);
bool is_mention(std::string_view token);
bool is_url(std::string_view token);

// Contiguous length-n substrings (in code points) of the lowercased text.
// Throws std::invalid_argument if n < 1.
std::vector<std::string> char_ngrams(std::string_view text, int n);

// Token n-grams joined by a single space. Throws if n < 1.
std::vector<std::string> token_ngrams(std::span<const std::string> tokens, int n);

}  // namespace microrec

#endif  // MICROREC_TEXT_H_
