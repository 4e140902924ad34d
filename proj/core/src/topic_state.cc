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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "microrec/bag.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

constexpr std::string_view kMagic = "microrec-topic-state 1";

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows(std::ostream& out, std::string_view tag,
                const std::vector<std::vector<double>>& rows) {
  out << tag << ' ' << rows.size() << ' ' << (rows.empty() ? 0 : rows.front().size()) << '\n';
  for (const auto& row : rows) {
    bool first = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0.0) continue;
      if (!first) out << ' ';
      out << i << ' ' << fmt_double(row[i]);
      first = false;
    }
    out << '\n';
  }
}

std::vector<std::vector<double>> read_rows(std::istream& in, std::string_view tag) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("topic state: truncated before " + std::string(tag));
  std::istringstream head(line);
  std::string got;
  std::size_t count = 0;
  std::size_t width = 0;
  if (!(head >> got >> count >> width) || got != tag) {
    throw std::runtime_error("topic state: expected '" + std::string(tag) + "' section");
  }
  std::vector<std::vector<double>> rows(count, std::vector<double>(width, 0.0));
  for (auto& row : rows) {
    if (!std::getline(in, line)) throw std::runtime_error("topic state: truncated rows");
    std::istringstream fields(line);
    std::size_t index = 0;
    std::string value;
    while (fields >> index >> value) {
      if (index >= width) throw std::runtime_error("topic state: index out of range");
      row[index] = std::stod(value);
    }
  }
  return rows;
}

void write_ints(std::ostream& out, std::string_view tag, const std::vector<int>& values) {
  out << tag << ' ' << values.size();
  for (int v : values) out << ' ' << v;
  out << '\n';
}

std::vector<int> read_ints(std::istream& in, std::string_view tag) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("topic state: truncated");
  std::istringstream fields(line);
  std::string got;
  std::size_t count = 0;
  if (!(fields >> got >> count) || got != tag) {
    throw std::runtime_error("topic state: expected '" + std::string(tag) + "'");
  }
  std::vector<int> values(count);
  for (auto& v : values) {
    if (!(fields >> v)) throw std::runtime_error("topic state: short integer list");
  }
  return values;
}

std::string expect_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("topic state: truncated");
  return line;
}

}  // namespace

std::string_view topic_family_name(TopicFamily family) {
  switch (family) {
    case TopicFamily::kPLSA: return "PLSA";
    case TopicFamily::kLDA: return "LDA";
    case TopicFamily::kLLDA: return "LLDA";
    case TopicFamily::kHDP: return "HDP";
    case TopicFamily::kHLDA: return "HLDA";
    case TopicFamily::kBTM: return "BTM";
  }
  return "?";
}

TopicFamily parse_topic_family(std::string_view name) {
  for (auto f : {TopicFamily::kPLSA, TopicFamily::kLDA, TopicFamily::kLLDA, TopicFamily::kHDP,
                 TopicFamily::kHLDA, TopicFamily::kBTM}) {
    if (topic_family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown topic family '" + std::string(name) + "'");
}

int Vocabulary::add(const std::string& word) {
  auto [it, inserted] = ids_.emplace(word, static_cast<int>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

int Vocabulary::find(const std::string& word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? -1 : it->second;
}

namespace topics_detail {

Encoded encode(const PooledCorpus& pooled) {
  if (pooled.docs.empty()) throw std::invalid_argument("empty corpus");
  Encoded out;
  out.docs.reserve(pooled.docs.size());
  for (const auto& doc : pooled.docs) {
    std::vector<int> ids;
    ids.reserve(doc.size());
    for (const auto& token : doc) ids.push_back(out.vocab.add(token));
    out.tokens += ids.size();
    out.docs.push_back(std::move(ids));
  }
  if (out.vocab.size() == 0) throw std::invalid_argument("empty vocabulary");
  return out;
}

void check_positive(double value, const char* name) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

}  // namespace topics_detail

void write_topic_state(std::ostream& out, const TopicState& state) {
  const auto& h = state.hyper;
  out << kMagic << '\n';
  out << "family " << topic_family_name(state.family) << '\n';
  out << "hyper alpha=" << fmt_double(h.alpha) << " beta=" << fmt_double(h.beta)
      << " gamma=" << fmt_double(h.gamma) << " topics=" << h.num_topics
      << " levels=" << h.levels << " iterations=" << h.iterations << " window=" << h.window_r
      << '\n';
  out << "seed " << state.rng_seed << '\n';
  out << "vocab " << state.vocab.size() << '\n';
  for (std::size_t i = 0; i < state.vocab.size(); ++i) {
    out << escape_gram(state.vocab.word(static_cast<int>(i))) << '\n';
  }
  out << "names " << state.topic_names.size() << '\n';
  for (const auto& name : state.topic_names) out << escape_gram(name) << '\n';
  write_rows(out, "phi", state.phi);
  write_rows(out, "theta", state.theta);
  write_ints(out, "tree_parent", state.tree_parent);
  write_ints(out, "tree_level", state.tree_level);
  write_ints(out, "tree_docs", state.tree_docs);
}

TopicState read_topic_state(std::istream& in) {
  TopicState state;
  if (expect_line(in) != kMagic) throw std::runtime_error("topic state: bad header");
  {
    std::istringstream f(expect_line(in));
    std::string tag, name;
    f >> tag >> name;
    if (tag != "family") throw std::runtime_error("topic state: expected family");
    state.family = parse_topic_family(name);
  }
  {
    std::istringstream f(expect_line(in));
    std::string tag, kv;
    f >> tag;
    if (tag != "hyper") throw std::runtime_error("topic state: expected hyper");
    while (f >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::runtime_error("topic state: bad hyper field");
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      auto& h = state.hyper;
      if (key == "alpha") h.alpha = std::stod(value);
      else if (key == "beta") h.beta = std::stod(value);
      else if (key == "gamma") h.gamma = std::stod(value);
      else if (key == "topics") h.num_topics = std::stoi(value);
      else if (key == "levels") h.levels = std::stoi(value);
      else if (key == "iterations") h.iterations = std::stoi(value);
      else if (key == "window") h.window_r = std::stoi(value);
      else throw std::runtime_error("topic state: unknown hyper field '" + key + "'");
    }
  }
  {
    std::istringstream f(expect_line(in));
    std::string tag;
    f >> tag >> state.rng_seed;
    if (tag != "seed") throw std::runtime_error("topic state: expected seed");
  }
  auto read_list = [&](std::string_view tag) {
    std::istringstream f(expect_line(in));
    std::string got;
    std::size_t count = 0;
    if (!(f >> got >> count) || got != tag) {
      throw std::runtime_error("topic state: expected '" + std::string(tag) + "'");
    }
    std::vector<std::string> items;
    for (std::size_t i = 0; i < count; ++i) items.push_back(unescape_gram(expect_line(in)));
    return items;
  };
  for (const auto& w : read_list("vocab")) state.vocab.add(w);
  state.topic_names = read_list("names");
  state.phi = read_rows(in, "phi");
  state.theta = read_rows(in, "theta");
  state.tree_parent = read_ints(in, "tree_parent");
  state.tree_level = read_ints(in, "tree_level");
  state.tree_docs = read_ints(in, "tree_docs");
  return state;
}

}  // namespace microrec
