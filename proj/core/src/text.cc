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

#include "microrec/text.h"

#include <array>
#include <stdexcept>

namespace microrec {
namespace {

struct EmoticonGlyph {
  std::string_view glyph;
  Emoticon category;
};

// Longest glyphs first so ":-)" wins over ":-" prefixes.
constexpr std::array<EmoticonGlyph, 24> kEmoticons = {{
    {":-)", Emoticon::kSmile},    {":-]", Emoticon::kSmile},
    {":-(", Emoticon::kFrown},    {":-[", Emoticon::kFrown},
    {";-)", Emoticon::kWink},     {":-d", Emoticon::kBigGrin},
    {":-o", Emoticon::kSurprise}, {":-/", Emoticon::kAwkward},
    {":-s", Emoticon::kConfused}, {":-p", Emoticon::kTongue},
    {":)", Emoticon::kSmile},     {"=)", Emoticon::kSmile},
    {":]", Emoticon::kSmile},     {":(", Emoticon::kFrown},
    {"=(", Emoticon::kFrown},     {":[", Emoticon::kFrown},
    {";)", Emoticon::kWink},      {":d", Emoticon::kBigGrin},
    {"=d", Emoticon::kBigGrin},   {"<3", Emoticon::kHeart},
    {":o", Emoticon::kSurprise},  {":/", Emoticon::kAwkward},
    {":s", Emoticon::kConfused},  {":p", Emoticon::kTongue},
}};

constexpr std::array<std::string_view, 3> kUrlPrefixes = {"http://", "https://", "www."};

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Non-ASCII bytes count as word characters so that scripts without ASCII
// letters still form tokens.
bool is_word_char(unsigned char c) { return is_alnum(c) || c == '_' || c >= 0x80; }

std::size_t code_point_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

std::vector<std::string_view> split_code_points(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = code_point_length(static_cast<unsigned char>(text[pos]));
    if (pos + len > text.size()) len = text.size() - pos;
    out.push_back(text.substr(pos, len));
    pos += len;
  }
  return out;
}

std::size_t match_url(std::string_view chunk, std::size_t pos) {
  const std::string_view rest = chunk.substr(pos);
  for (std::string_view prefix : kUrlPrefixes) {
    if (rest.starts_with(prefix)) {
      std::size_t end = rest.size();
      constexpr std::string_view kTrailing = ".,!?;:'\"";
      while (end > prefix.size() && kTrailing.find(rest[end - 1]) != std::string_view::npos) {
        --end;
      }
      return end;
    }
  }
  return 0;
}

std::size_t match_emoticon(std::string_view chunk, std::size_t pos) {
  if (pos > 0 && is_alnum(static_cast<unsigned char>(chunk[pos - 1]))) return 0;
  const std::string_view rest = chunk.substr(pos);
  for (const auto& e : kEmoticons) {
    if (!rest.starts_with(e.glyph)) continue;
    const std::size_t end = pos + e.glyph.size();
    if (end < chunk.size() && is_alnum(static_cast<unsigned char>(chunk[end]))) continue;
    return e.glyph.size();
  }
  return 0;
}

std::size_t word_run(std::string_view chunk, std::size_t pos) {
  std::size_t end = pos;
  while (end < chunk.size() && is_word_char(static_cast<unsigned char>(chunk[end]))) ++end;
  return end - pos;
}

void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    const unsigned char c = static_cast<unsigned char>(chunk[pos]);
    if (std::size_t len = match_url(chunk, pos); len > 0) {
      out.emplace_back(chunk.substr(pos, len));
      // The rest of the whitespace-delimited chunk belongs to the URL.
      return;
    }
    if (std::size_t len = match_emoticon(chunk, pos); len > 0) {
      out.emplace_back(chunk.substr(pos, len));
      pos += len;
      continue;
    }
    if ((c == '#' || c == '@') && pos + 1 < chunk.size()) {
      if (std::size_t len = word_run(chunk, pos + 1); len > 0) {
        out.push_back(squeeze_repeats(chunk.substr(pos, len + 1)));
        pos += len + 1;
        continue;
      }
    }
    if (is_word_char(c)) {
      const std::size_t len = word_run(chunk, pos);
      out.push_back(squeeze_repeats(chunk.substr(pos, len)));
      pos += len;
      continue;
    }
    ++pos;  // punctuation
  }
}

}  // namespace

std::optional<Emoticon> emoticon_category(std::string_view glyph) {
  for (const auto& e : kEmoticons) {
    if (e.glyph == glyph) return e.category;
  }
  return std::nullopt;
}

std::string_view emoticon_label(Emoticon category) {
  switch (category) {
    case Emoticon::kSmile: return ":)";
    case Emoticon::kFrown: return ":(";
    case Emoticon::kWink: return ";)";
    case Emoticon::kBigGrin: return ":d";
    case Emoticon::kHeart: return "<3";
    case Emoticon::kSurprise: return ":o";
    case Emoticon::kAwkward: return ":/";
    case Emoticon::kConfused: return ":s";
    case Emoticon::kTongue: return ":p";
  }
  return "?";
}

bool emoticon_has_variations(Emoticon category) {
  switch (category) {
    case Emoticon::kBigGrin:
    case Emoticon::kHeart:
    case Emoticon::kSurprise:
    case Emoticon::kConfused:
      return false;
    default:
      return true;
  }
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string squeeze_repeats(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::string_view prev;
  int run = 0;
  for (std::string_view cp : split_code_points(text)) {
    run = (cp == prev) ? run + 1 : 1;
    prev = cp;
    if (run <= 2) out.append(cp);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  const std::string lowered = to_lower(text);
  const std::string_view view = lowered;
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < view.size()) {
    while (pos < view.size() && is_space(static_cast<unsigned char>(view[pos]))) ++pos;
    std::size_t end = pos;
    while (end < view.size() && !is_space(static_cast<unsigned char>(view[end]))) ++end;
    if (end > pos) tokenize_chunk(view.substr(pos, end - pos), tokens);
    pos = end;
  }
  return tokens;
}

bool is_hashtag(std::string_view token) { return token.size() > 1 && token[0] == '#'; }

bool is_mention(std::string_view token) { return token.size() > 1 && token[0] == '@'; }

bool is_url(std::string_view token) {
  for (std::string_view prefix : kUrlPrefixes) {
    if (token.starts_with(prefix)) return true;
  }
  return false;
}

std::vector<std::string> char_ngrams(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("char_ngrams: n must be >= 1");
  const std::string lowered = to_lower(text);
  const auto cps = split_code_points(lowered);
  std::vector<std::string> grams;
  const auto size = static_cast<std::size_t>(n);
  if (cps.size() < size) return grams;
  grams.reserve(cps.size() - size + 1);
  for (std::size_t i = 0; i + size <= cps.size(); ++i) {
    std::string gram;
    for (std::size_t j = i; j < i + size; ++j) gram.append(cps[j]);
    grams.push_back(std::move(gram));
  }
  return grams;
}

std::vector<std::string> token_ngrams(std::span<const std::string> tokens, int n) {
  if (n < 1) throw std::invalid_argument("token_ngrams: n must be >= 1");
  std::vector<std::string> grams;
  const auto size = static_cast<std::size_t>(n);
  if (tokens.size() < size) return grams;
  grams.reserve(tokens.size() - size + 1);
  for (std::size_t i = 0; i + size <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t j = i + 1; j < i + size; ++j) {
      gram.push_back(' ');
      gram.append(tokens[j]);
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

}  // namespace microrec
