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

#ifndef MICROREC_CORPUS_IO_H_
#define MICROREC_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "microrec/corpus.h"

namespace microrec {

// Tweet file: JSON lines with keys id, author, ts, text, retweet_of (string
// or null). Numeric ids are accepted and converted to strings. Empty text is
// accepted and flagged degenerate. Errors carry the 1-based line number.
std::vector<Tweet> read_tweets_jsonl(std::istream& in);
std::vector<Tweet> read_tweets_jsonl(const std::filesystem::path& path);

void write_tweets_jsonl(std::ostream& out, std::span<const Tweet> tweets);
void write_tweets_jsonl(const std::filesystem::path& path, std::span<const Tweet> tweets);

// Graph file: "follower<TAB>followee" per line. Blank lines are skipped.
SocialGraph read_graph_tsv(std::istream& in);
SocialGraph read_graph_tsv(const std::filesystem::path& path);

void write_graph_tsv(std::ostream& out, const SocialGraph& graph);
void write_graph_tsv(const std::filesystem::path& path, const SocialGraph& graph);

Corpus load_corpus(const std::filesystem::path& tweets_path,
                   const std::filesystem::path& graph_path);

}  // namespace microrec

#endif  // MICROREC_CORPUS_IO_H_
