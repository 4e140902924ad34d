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
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

// Direct-assignment sampler state. Topic slots are recycled through a free
// list; `active` keeps the live slots in creation order.
class HdpSampler {
 public:
  HdpSampler(const topics_detail::Encoded& encoded, double alpha, double gamma, double beta,
             uint64_t seed)
      : docs_(encoded.docs),
        vocab_(encoded.vocab.size()),
        alpha_(alpha),
        gamma_(gamma),
        beta_(beta),
        vbeta_(static_cast<double>(vocab_) * beta),
        rng_(seed),
        n_dk_(docs_.size()),
        z_(docs_.size()) {}

  void initialize() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      z_[d].assign(docs_[d].size(), -1);
      for (std::size_t i = 0; i < docs_[d].size(); ++i) assign(d, i);
    }
  }

  void sweep() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      for (std::size_t i = 0; i < docs_[d].size(); ++i) {
        remove(d, i);
        assign(d, i);
      }
    }
    resample_global();
  }

  TopicState finish() {
    std::vector<int> slot_to_topic(n_k_.size(), -1);
    for (std::size_t t = 0; t < active_.size(); ++t) {
      slot_to_topic[static_cast<std::size_t>(active_[t])] = static_cast<int>(t);
    }
    const std::size_t k = active_.size();
    TopicState state;
    state.theta.assign(docs_.size(), std::vector<double>(k, 0.0));
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      const double denom = static_cast<double>(docs_[d].size()) + static_cast<double>(k) * alpha_;
      for (std::size_t t = 0; t < k; ++t) {
        state.theta[d][t] = (count_dk(d, active_[t]) + alpha_) / denom;
      }
    }
    state.phi.assign(k, std::vector<double>(vocab_, 0.0));
    for (std::size_t t = 0; t < k; ++t) {
      const auto s = static_cast<std::size_t>(active_[t]);
      const double denom = n_k_[s] + vbeta_;
      for (std::size_t w = 0; w < vocab_; ++w) state.phi[t][w] = (n_kw_[s][w] + beta_) / denom;
      state.table_counts.push_back(m_k_[s]);
      state.topic_names.push_back("Topic " + std::to_string(t));
    }
    state.z = z_;
    for (auto& row : state.z) {
      for (int& v : row) v = slot_to_topic[static_cast<std::size_t>(v)];
    }
    return state;
  }

 private:
  int count_dk(std::size_t d, int slot) const {
    const auto& row = n_dk_[d];
    const auto s = static_cast<std::size_t>(slot);
    return s < row.size() ? row[s] : 0;
  }

  void bump_dk(std::size_t d, std::size_t slot, int delta) {
    auto& row = n_dk_[d];
    if (row.size() <= slot) row.resize(slot + 1, 0);
    row[slot] += delta;
  }

  void remove(std::size_t d, std::size_t i) {
    const auto s = static_cast<std::size_t>(z_[d][i]);
    const auto w = static_cast<std::size_t>(docs_[d][i]);
    bump_dk(d, s, -1);
    --n_kw_[s][w];
    --n_k_[s];
    if (n_k_[s] == 0) retire(s);
  }

  void assign(std::size_t d, std::size_t i) {
    const auto w = static_cast<std::size_t>(docs_[d][i]);
    weights_.resize(active_.size() + 1);
    double total = 0.0;
    for (std::size_t t = 0; t < active_.size(); ++t) {
      const auto s = static_cast<std::size_t>(active_[t]);
      const double p = (count_dk(d, active_[t]) + alpha_ * beta_k_[s]) * (n_kw_[s][w] + beta_) /
                       (n_k_[s] + vbeta_);
      weights_[t] = p;
      total += p;
    }
    const double p_new = alpha_ * beta_u_ / static_cast<double>(vocab_);
    weights_[active_.size()] = p_new;
    total += p_new;
    const std::size_t pick = rng_.categorical(weights_, total);
    const std::size_t s = pick < active_.size() ? static_cast<std::size_t>(active_[pick])
                                                : spawn();
    z_[d][i] = static_cast<int>(s);
    bump_dk(d, s, 1);
    ++n_kw_[s][w];
    ++n_k_[s];
  }

  std::size_t spawn() {
    std::size_t s;
    if (!free_.empty()) {
      s = free_.back();
      free_.pop_back();
    } else {
      s = n_k_.size();
      n_k_.push_back(0);
      m_k_.push_back(0);
      beta_k_.push_back(0.0);
      n_kw_.emplace_back(vocab_, 0);
    }
    const double b = rng_.beta(1.0, gamma_);
    beta_k_[s] = b * beta_u_;
    beta_u_ *= 1.0 - b;
    m_k_[s] = 0;
    active_.push_back(static_cast<int>(s));
    return s;
  }

  void retire(std::size_t s) {
    beta_u_ += beta_k_[s];
    beta_k_[s] = 0.0;
    m_k_[s] = 0;
    active_.erase(std::find(active_.begin(), active_.end(), static_cast<int>(s)));
    free_.push_back(s);
  }

  void resample_global() {
    for (int slot : active_) m_k_[static_cast<std::size_t>(slot)] = 0;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
      for (int slot : active_) {
        const auto s = static_cast<std::size_t>(slot);
        const int n = count_dk(d, slot);
        const double ab = alpha_ * beta_k_[s];
        for (int j = 0; j < n; ++j) {
          if (rng_.bernoulli(ab / (ab + j))) ++m_k_[s];
        }
      }
    }
    std::vector<double> concentration;
    for (int slot : active_) concentration.push_back(m_k_[static_cast<std::size_t>(slot)]);
    concentration.push_back(gamma_);
    const auto draw = rng_.dirichlet(concentration);
    for (std::size_t t = 0; t < active_.size(); ++t) {
      beta_k_[static_cast<std::size_t>(active_[t])] = draw[t];
    }
    beta_u_ = draw.back();
  }

  const std::vector<std::vector<int>>& docs_;
  std::size_t vocab_;
  double alpha_;
  double gamma_;
  double beta_;
  double vbeta_;
  Rng rng_;

  std::vector<std::vector<int>> n_dk_;
  std::vector<std::vector<int>> n_kw_;
  std::vector<int> n_k_;
  std::vector<int> m_k_;
  std::vector<double> beta_k_;
  double beta_u_ = 1.0;
  std::vector<int> active_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<int>> z_;
  std::vector<double> weights_;
};

}  // namespace

TopicState train_hdp(const PooledCorpus& pooled, double alpha, double gamma, double beta,
                     int iterations, uint64_t seed, const CancelFn& cancel) {
  topics_detail::check_positive(alpha, "alpha");
  topics_detail::check_positive(gamma, "gamma");
  topics_detail::check_positive(beta, "beta");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  auto encoded = topics_detail::encode(pooled);
  HdpSampler sampler(encoded, alpha, gamma, beta, seed);
  sampler.initialize();
  for (int it = 0; it < iterations; ++it) {
    if (cancel) cancel();
    sampler.sweep();
  }
  TopicState state = sampler.finish();
  state.family = TopicFamily::kHDP;
  state.hyper.alpha = alpha;
  state.hyper.beta = beta;
  state.hyper.gamma = gamma;
  state.hyper.iterations = iterations;
  state.hyper.num_topics = static_cast<int>(state.phi.size());
  state.rng_seed = seed;
  state.vocab = std::move(encoded.vocab);
  return state;
}

}  // namespace microrec
