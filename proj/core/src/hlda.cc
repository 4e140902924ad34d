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

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

struct Node {
  int parent = -1;
  int level = 0;
  int docs = 0;  // m: documents whose path passes through the node
  int total = 0;
  std::vector<int> words;
  std::vector<int> children;
  bool alive = true;
};

class HldaSampler {
 public:
  HldaSampler(const topics_detail::Encoded& encoded, int levels, double alpha, double beta,
              double gamma, uint64_t seed)
      : docs_(encoded.docs),
        vocab_(encoded.vocab.size()),
        levels_(static_cast<std::size_t>(levels)),
        alpha_(alpha),
        beta_(beta),
        gamma_(gamma),
        vbeta_(static_cast<double>(vocab_) * beta),
        rng_(seed),
        paths_(docs_.size()),
        levels_of_(docs_.size()) {
    root_ = new_node(-1);
  }

  void initialize() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      levels_of_[d].resize(docs_[d].size());
      for (auto& l : levels_of_[d]) l = static_cast<int>(rng_.uniform_int(levels_));
      sample_path(d);
    }
  }

  void sweep() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      detach(d);
      sample_path(d);
      sample_levels(d);
    }
  }

  TopicState finish() {
    // Breadth-first compaction of the live tree.
    std::vector<int> order;
    std::vector<int> remap(nodes_.size(), -1);
    std::deque<int> queue{root_};
    while (!queue.empty()) {
      const int id = queue.front();
      queue.pop_front();
      remap[static_cast<std::size_t>(id)] = static_cast<int>(order.size());
      order.push_back(id);
      for (int c : nodes_[static_cast<std::size_t>(id)].children) queue.push_back(c);
    }
    const std::size_t k = order.size();
    TopicState state;
    for (std::size_t t = 0; t < k; ++t) {
      const Node& n = nodes_[static_cast<std::size_t>(order[t])];
      state.tree_parent.push_back(n.parent < 0 ? -1 : remap[static_cast<std::size_t>(n.parent)]);
      state.tree_level.push_back(n.level);
      state.tree_docs.push_back(n.docs);
      std::vector<double> row(vocab_);
      for (std::size_t w = 0; w < vocab_; ++w) row[w] = (n.words[w] + beta_) / (n.total + vbeta_);
      state.phi.push_back(std::move(row));
      state.topic_names.push_back("Node " + std::to_string(t) + " (level " +
                                  std::to_string(n.level) + ")");
    }
    const double la = static_cast<double>(levels_) * alpha_;
    state.theta.assign(docs_.size(), std::vector<double>(k, 0.0));
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      std::vector<int> per_level(levels_, 0);
      for (int l : levels_of_[d]) ++per_level[static_cast<std::size_t>(l)];
      std::vector<int> path;
      for (std::size_t l = 0; l < levels_; ++l) {
        const int node = remap[static_cast<std::size_t>(paths_[d][l])];
        path.push_back(node);
        state.theta[d][static_cast<std::size_t>(node)] +=
            (per_level[l] + alpha_) / (static_cast<double>(docs_[d].size()) + la);
      }
      state.paths.push_back(std::move(path));
    }
    state.z = levels_of_;
    return state;
  }

 private:
  int new_node(int parent) {
    Node n;
    n.parent = parent;
    n.level = parent < 0 ? 0 : nodes_[static_cast<std::size_t>(parent)].level + 1;
    n.words.assign(vocab_, 0);
    int id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      nodes_[static_cast<std::size_t>(id)] = std::move(n);
    } else {
      id = static_cast<int>(nodes_.size());
      nodes_.push_back(std::move(n));
    }
    if (parent >= 0) nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  }

  void detach(std::size_t d) {
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      Node& n = node(paths_[d][static_cast<std::size_t>(levels_of_[d][i])]);
      --n.words[static_cast<std::size_t>(docs_[d][i])];
      --n.total;
    }
    for (std::size_t l = levels_; l-- > 0;) {
      const int id = paths_[d][l];
      Node& n = node(id);
      --n.docs;
      if (n.docs == 0 && id != root_) {
        auto& siblings = node(n.parent).children;
        siblings.erase(std::find(siblings.begin(), siblings.end(), id));
        n.alive = false;
        free_.push_back(id);
      }
    }
  }

  void attach(std::size_t d) {
    for (int id : paths_[d]) ++node(id).docs;
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      Node& n = node(paths_[d][static_cast<std::size_t>(levels_of_[d][i])]);
      ++n.words[static_cast<std::size_t>(docs_[d][i])];
      ++n.total;
    }
  }

  // Log Dirichlet-multinomial likelihood of `counts` (words of document d at
  // one level) being added to a node with the given word counts.
  double level_loglik(const std::map<int, int>& counts, int size, const Node* n) const {
    const double total = n ? n->total : 0;
    double ll = std::lgamma(total + vbeta_) - std::lgamma(total + size + vbeta_);
    for (const auto& [w, c] : counts) {
      const double nw = n ? n->words[static_cast<std::size_t>(w)] : 0;
      ll += std::lgamma(nw + c + beta_) - std::lgamma(nw + beta_);
    }
    return ll;
  }

  void sample_path(std::size_t d) {
    std::vector<std::map<int, int>> counts(levels_);
    std::vector<int> sizes(levels_, 0);
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto l = static_cast<std::size_t>(levels_of_[d][i]);
      ++counts[l][docs_[d][i]];
      ++sizes[l];
    }
    // Likelihood of placing levels l.. on fresh nodes.
    std::vector<double> fresh(levels_ + 1, 0.0);
    for (std::size_t l = levels_; l-- > 0;) {
      fresh[l] = fresh[l + 1] + level_loglik(counts[l], sizes[l], nullptr);
    }

    // Candidates: (node, log weight). A node at the last level means "take
    // this existing path"; an internal node means "branch below it".
    candidates_.clear();
    log_weights_.clear();
    struct Frame {
      int id;
      double score;  // log prior + log likelihood down to and including id
    };
    std::vector<Frame> stack{{root_, level_loglik(counts[0], sizes[0], &node(root_))}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      const Node& n = node(f.id);
      const auto level = static_cast<std::size_t>(n.level);
      if (level + 1 == levels_) {
        candidates_.push_back(f.id);
        log_weights_.push_back(f.score);
        continue;
      }
      const double denom = n.docs + gamma_;
      candidates_.push_back(f.id);
      log_weights_.push_back(f.score + std::log(gamma_ / denom) + fresh[level + 1]);
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
        const Node& c = node(*it);
        stack.push_back({*it, f.score + std::log(c.docs / denom) +
                                  level_loglik(counts[level + 1], sizes[level + 1], &c)});
      }
    }
    const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
    weights_.resize(log_weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] = std::exp(log_weights_[i] - top);
    int id = candidates_[rng_.categorical(weights_)];

    std::vector<int> path;
    for (int cur = id; cur >= 0; cur = node(cur).parent) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    while (path.size() < levels_) path.push_back(new_node(path.back()));
    paths_[d] = std::move(path);
    attach(d);
  }

  void sample_levels(std::size_t d) {
    std::vector<int> per_level(levels_, 0);
    for (int l : levels_of_[d]) ++per_level[static_cast<std::size_t>(l)];
    weights_.resize(levels_);
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto w = static_cast<std::size_t>(docs_[d][i]);
      auto l = static_cast<std::size_t>(levels_of_[d][i]);
      Node* n = &node(paths_[d][l]);
      --n->words[w];
      --n->total;
      --per_level[l];
      double total = 0.0;
      for (std::size_t k = 0; k < levels_; ++k) {
        const Node& c = node(paths_[d][k]);
        weights_[k] = (per_level[k] + alpha_) * (c.words[w] + beta_) / (c.total + vbeta_);
        total += weights_[k];
      }
      l = rng_.categorical(weights_, total);
      levels_of_[d][i] = static_cast<int>(l);
      n = &node(paths_[d][l]);
      ++n->words[w];
      ++n->total;
      ++per_level[l];
    }
  }

  Node& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  const std::vector<std::vector<int>>& docs_;
  std::size_t vocab_;
  std::size_t levels_;
  double alpha_;
  double beta_;
  double gamma_;
  double vbeta_;
  Rng rng_;
  std::vector<Node> nodes_;
  std::vector<int> free_;
  int root_ = 0;
  std::vector<std::vector<int>> paths_;
  std::vector<std::vector<int>> levels_of_;
  std::vector<int> candidates_;
  std::vector<double> log_weights_;
  std::vector<double> weights_;
};

}  // namespace

TopicState train_hlda(const PooledCorpus& pooled, int levels, double alpha, double beta,
                      double gamma, int iterations, uint64_t seed, const CancelFn& cancel) {
  if (levels < 2) throw std::invalid_argument("levels must be >= 2");
  topics_detail::check_positive(alpha, "alpha");
  topics_detail::check_positive(beta, "beta");
  topics_detail::check_positive(gamma, "gamma");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  auto encoded = topics_detail::encode(pooled);
  HldaSampler sampler(encoded, levels, alpha, beta, gamma, seed);
  sampler.initialize();
  for (int it = 0; it < iterations; ++it) {
    if (cancel) cancel();
    sampler.sweep();
  }
  TopicState state = sampler.finish();
  state.family = TopicFamily::kHLDA;
  state.hyper.alpha = alpha;
  state.hyper.beta = beta;
  state.hyper.gamma = gamma;
  state.hyper.levels = levels;
  state.hyper.iterations = iterations;
  state.rng_seed = seed;
  state.vocab = std::move(encoded.vocab);
  return state;
}

}  // namespace microrec
