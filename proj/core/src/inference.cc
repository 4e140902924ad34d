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
#include <map>
#include <stdexcept>

#include "microrec/random.h"
#include "microrec/topics.h"

namespace microrec {
namespace {

constexpr int kPlsaFoldInIterations = 50;

std::vector<double> uniform(std::size_t k) {
  return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

void normalize(std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  for (double& x : v) x /= total;
}

std::vector<double> infer_btm(const TopicState& state, const std::vector<int>& ids) {
  const std::size_t k = state.num_topics();
  const auto& prior = state.theta.front();
  std::vector<double> out(k, 0.0);
  if (ids.size() == 1) {
    const auto w = static_cast<std::size_t>(ids.front());
    for (std::size_t t = 0; t < k; ++t) out[t] = prior[t] * state.phi[t][w];
    normalize(out);
    return out;
  }
  std::map<std::pair<int, int>, int> counts;
  std::size_t total = 0;
  for (const auto& b : extract_biterms<int>(ids, kWholeDocument)) {
    ++counts[b];
    ++total;
  }
  std::vector<double> given_b(k);
  for (const auto& [b, c] : counts) {
    const auto w1 = static_cast<std::size_t>(b.first);
    const auto w2 = static_cast<std::size_t>(b.second);
    for (std::size_t t = 0; t < k; ++t) given_b[t] = prior[t] * state.phi[t][w1] * state.phi[t][w2];
    normalize(given_b);
    const double p_b = static_cast<double>(c) / static_cast<double>(total);
    for (std::size_t t = 0; t < k; ++t) out[t] += given_b[t] * p_b;
  }
  normalize(out);
  return out;
}

std::vector<double> infer_plsa(const TopicState& state, const std::vector<int>& ids) {
  const std::size_t k = state.num_topics();
  std::vector<double> theta = uniform(k);
  std::vector<double> post(k);
  for (int it = 0; it < kPlsaFoldInIterations; ++it) {
    std::vector<double> acc(k, 0.0);
    for (int id : ids) {
      const auto w = static_cast<std::size_t>(id);
      for (std::size_t t = 0; t < k; ++t) post[t] = theta[t] * state.phi[t][w];
      normalize(post);
      for (std::size_t t = 0; t < k; ++t) acc[t] += post[t];
    }
    normalize(acc);
    theta = std::move(acc);
  }
  return theta;
}

std::vector<double> infer_flat(const TopicState& state, const std::vector<int>& ids,
                               const InferOptions& options, Rng& rng) {
  const std::size_t k = state.num_topics();
  const double alpha = state.hyper.alpha;
  std::vector<int> n_z(k, 0);
  std::vector<std::size_t> z(ids.size());
  for (auto& t : z) {
    t = static_cast<std::size_t>(rng.uniform_int(k));
    ++n_z[t];
  }
  std::vector<double> weights(k);
  std::vector<double> acc(k, 0.0);
  const double denom = static_cast<double>(ids.size()) + static_cast<double>(k) * alpha;
  for (int it = 0; it < options.iterations; ++it) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto w = static_cast<std::size_t>(ids[i]);
      --n_z[z[i]];
      double total = 0.0;
      for (std::size_t t = 0; t < k; ++t) {
        weights[t] = (n_z[t] + alpha) * state.phi[t][w];
        total += weights[t];
      }
      z[i] = rng.categorical(weights, total);
      ++n_z[z[i]];
    }
    if (it >= options.burn_in) {
      for (std::size_t t = 0; t < k; ++t) acc[t] += (n_z[t] + alpha) / denom;
    }
  }
  normalize(acc);
  return acc;
}

std::vector<double> infer_hlda(const TopicState& state, const std::vector<int>& ids,
                               const InferOptions& options, Rng& rng) {
  const std::size_t k = state.num_topics();
  const auto levels = static_cast<std::size_t>(state.hyper.levels);
  const double alpha = state.hyper.alpha;
  const double gamma = state.hyper.gamma;

  // Existing root-to-leaf paths with their nCRP prior.
  std::vector<std::vector<std::size_t>> paths;
  std::vector<double> log_prior;
  for (std::size_t n = 0; n < k; ++n) {
    if (static_cast<std::size_t>(state.tree_level[n]) + 1 != levels) continue;
    std::vector<std::size_t> path;
    double lp = 0.0;
    for (int cur = static_cast<int>(n); cur >= 0; cur = state.tree_parent[static_cast<std::size_t>(cur)]) {
      const auto c = static_cast<std::size_t>(cur);
      path.push_back(c);
      const int parent = state.tree_parent[c];
      if (parent >= 0) {
        lp += std::log(state.tree_docs[c] / (state.tree_docs[static_cast<std::size_t>(parent)] + gamma));
      }
    }
    std::reverse(path.begin(), path.end());
    paths.push_back(std::move(path));
    log_prior.push_back(lp);
  }
  if (paths.empty()) throw std::runtime_error("hlda state has no complete path");

  std::vector<std::size_t> level(ids.size());
  for (auto& l : level) l = static_cast<std::size_t>(rng.uniform_int(levels));
  std::vector<int> per_level(levels, 0);
  for (auto l : level) ++per_level[l];

  std::vector<double> path_w(paths.size());
  std::vector<double> level_w(levels);
  std::vector<double> acc(k, 0.0);
  const double denom = static_cast<double>(ids.size()) + static_cast<double>(levels) * alpha;
  for (int it = 0; it < options.iterations; ++it) {
    for (std::size_t p = 0; p < paths.size(); ++p) {
      double lw = log_prior[p];
      for (std::size_t i = 0; i < ids.size(); ++i) {
        lw += std::log(state.phi[paths[p][level[i]]][static_cast<std::size_t>(ids[i])]);
      }
      path_w[p] = lw;
    }
    const double top = *std::max_element(path_w.begin(), path_w.end());
    for (double& w : path_w) w = std::exp(w - top);
    const auto& path = paths[rng.categorical(path_w)];

    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto w = static_cast<std::size_t>(ids[i]);
      --per_level[level[i]];
      double total = 0.0;
      for (std::size_t l = 0; l < levels; ++l) {
        level_w[l] = (per_level[l] + alpha) * state.phi[path[l]][w];
        total += level_w[l];
      }
      level[i] = rng.categorical(level_w, total);
      ++per_level[level[i]];
    }
    if (it >= options.burn_in) {
      for (std::size_t l = 0; l < levels; ++l) acc[path[l]] += (per_level[l] + alpha) / denom;
    }
  }
  normalize(acc);
  return acc;
}

}  // namespace

Inferred infer_theta(const TopicState& state, std::span<const std::string> tokens,
                     const InferOptions& options) {
  const std::size_t k = state.num_topics();
  if (k == 0) throw std::invalid_argument("infer_theta: untrained state");
  if (options.iterations < 1 || options.burn_in < 0 || options.burn_in >= options.iterations) {
    throw std::invalid_argument("infer_theta: need 0 <= burn_in < iterations");
  }
  std::vector<int> ids;
  std::string key;
  for (const auto& token : tokens) {
    const int id = state.vocab.find(token);
    if (id < 0) continue;
    ids.push_back(id);
    key += token;
    key.push_back('\x1f');
  }
  Inferred out;
  if (ids.empty()) {
    out.theta = uniform(k);
    out.warning = "all tokens out of vocabulary; using the uniform distribution";
    return out;
  }
  Rng rng(derive_seed(state.rng_seed, "infer/" + key));
  switch (state.family) {
    case TopicFamily::kBTM: out.theta = infer_btm(state, ids); break;
    case TopicFamily::kPLSA: out.theta = infer_plsa(state, ids); break;
    case TopicFamily::kHLDA: out.theta = infer_hlda(state, ids, options, rng); break;
    case TopicFamily::kLDA:
    case TopicFamily::kLLDA:
    case TopicFamily::kHDP: out.theta = infer_flat(state, ids, options, rng); break;
  }
  return out;
}

}  // namespace microrec
