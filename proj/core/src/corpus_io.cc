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

#include "microrec/corpus_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace microrec {
namespace {

std::string id_field(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw std::runtime_error("line " + std::to_string(line) + ": missing key '" + key + "'");
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<int64_t>());
  throw std::runtime_error("line " + std::to_string(line) + ": key '" + key +
                           "' must be a string or integer");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::vector<Tweet> read_tweets_jsonl(std::istream& in) {
  std::vector<Tweet> tweets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected a JSON object");
    }
    Tweet t;
    t.id = id_field(obj, "id", line_no);
    t.author = id_field(obj, "author", line_no);
    auto ts = obj.find("ts");
    if (ts == obj.end() || !ts->is_number_integer()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": 'ts' must be an integer");
    }
    t.timestamp = ts->get<int64_t>();
    auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": 'text' must be a string");
    }
    t.text = text->get<std::string>();
    t.degenerate = t.text.empty();
    if (auto rt = obj.find("retweet_of"); rt != obj.end() && !rt->is_null()) {
      t.retweet_of = id_field(obj, "retweet_of", line_no);
    }
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<Tweet> read_tweets_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_tweets_jsonl(in);
}

void write_tweets_jsonl(std::ostream& out, std::span<const Tweet> tweets) {
  for (const Tweet& t : tweets) {
    nlohmann::ordered_json obj;
    obj["id"] = t.id;
    obj["author"] = t.author;
    obj["ts"] = t.timestamp;
    obj["text"] = t.text;
    obj["retweet_of"] = t.retweet_of ? nlohmann::ordered_json(*t.retweet_of) : nlohmann::ordered_json(nullptr);
    out << obj.dump() << '\n';
  }
}

void write_tweets_jsonl(const std::filesystem::path& path, std::span<const Tweet> tweets) {
  auto out = open_out(path);
  write_tweets_jsonl(out, tweets);
}

SocialGraph read_graph_tsv(std::istream& in) {
  SocialGraph graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw std::runtime_error("graph line " + std::to_string(line_no) +
                               ": expected 'follower<TAB>followee'");
    }
    const std::string follower = line.substr(0, tab);
    const std::string followee = line.substr(tab + 1);
    if (follower.empty() || followee.empty()) {
      throw std::runtime_error("graph line " + std::to_string(line_no) + ": empty user id");
    }
    try {
      graph.add_edge(follower, followee);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("graph line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return graph;
}

SocialGraph read_graph_tsv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_graph_tsv(in);
}

void write_graph_tsv(std::ostream& out, const SocialGraph& graph) {
  for (const auto& [follower, followee] : graph.edges()) {
    out << follower << '\t' << followee << '\n';
  }
}

void write_graph_tsv(const std::filesystem::path& path, const SocialGraph& graph) {
  auto out = open_out(path);
  write_graph_tsv(out, graph);
}

Corpus load_corpus(const std::filesystem::path& tweets_path,
                   const std::filesystem::path& graph_path) {
  return Corpus(read_tweets_jsonl(tweets_path), read_graph_tsv(graph_path));
}

}  // namespace microrec
