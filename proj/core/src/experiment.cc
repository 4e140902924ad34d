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

#include "microrec/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "microrec/random.h"
#include "microrec/text.h"

namespace microrec {
namespace {

using Clock = std::chrono::steady_clock;

bool chronological(const Tweet* a, const Tweet* b) {
  if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
  return a->id < b->id;
}

class ResourceGuard {
 public:
  explicit ResourceGuard(const ExperimentOptions& options)
      : mem_limit_mb_(options.mem_limit_mb), has_deadline_(options.time_limit_s > 0.0) {
    if (has_deadline_) {
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(options.time_limit_s));
    }
  }

  void check() const {
    if (has_deadline_ && Clock::now() > deadline_) {
      throw ResourceLimitExceeded("time limit exceeded");
    }
    if (mem_limit_mb_ > 0 && resident_memory_mb() > mem_limit_mb_) {
      throw ResourceLimitExceeded("memory limit exceeded");
    }
  }

 private:
  std::size_t mem_limit_mb_;
  bool has_deadline_;
  Clock::time_point deadline_{};
};

struct UserOutcome {
  double ap = 0.0;
  std::chrono::nanoseconds train{0};
  std::chrono::nanoseconds test{0};
};

// Configurations evaluated together on one source. Topic configurations that
// differ only in aggregation share the trained model.
struct WorkItem {
  Source source = Source::kT;
  std::vector<std::size_t> configs;  // indices into the grid
  bool shared_topic_model = false;
};

struct WorkResult {
  std::string error;
  std::chrono::nanoseconds shared_train{0};
  // Parallel to WorkItem::configs.
  std::vector<std::map<UserId, UserOutcome>> outcomes;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

std::size_t resident_memory_mb() {
  std::ifstream statm("/proc/self/statm");
  std::size_t pages_total = 0;
  std::size_t pages_resident = 0;
  if (!(statm >> pages_total >> pages_resident)) return 0;
  const long page = sysconf(_SC_PAGESIZE);
  return pages_resident * static_cast<std::size_t>(page > 0 ? page : 4096) / (1024 * 1024);
}

std::vector<UserGroup> derive_groups(const Corpus& corpus, std::span<const UserId> users) {
  UserGroup is{"IS", {}}, bu{"BU", {}}, ip{"IP", {}}, all{"ALL", {}};
  for (const UserId& u : users) {
    all.users.push_back(u);
    try {
      switch (posting_ratio(corpus, u).type) {
        case UserType::kIS: is.users.push_back(u); break;
        case UserType::kBU: bu.users.push_back(u); break;
        case UserType::kIP: ip.users.push_back(u); break;
      }
    } catch (const std::domain_error&) {
      // Undefined ratio: the user only belongs to ALL.
    }
  }
  std::vector<UserGroup> out;
  for (auto* g : {&is, &bu, &ip, &all}) {
    if (!g->users.empty()) out.push_back(std::move(*g));
  }
  return out;
}

std::vector<UserGroup> read_groups_tsv(std::istream& in) {
  std::vector<UserGroup> groups;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::invalid_argument("groups line " + std::to_string(line_no) +
                                  ": expected 'group<TAB>user'");
    }
    const std::string name = trim(line.substr(0, tab));
    const std::string user = trim(line.substr(tab + 1));
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const UserGroup& g) { return g.name == name; });
    if (it == groups.end()) {
      groups.push_back({name, {}});
      it = groups.end() - 1;
    }
    if (std::find(it->users.begin(), it->users.end(), user) == it->users.end()) {
      it->users.push_back(user);
    }
  }
  return groups;
}

std::vector<UserGroup> load_groups(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open groups file " + path.string());
  return read_groups_tsv(in);
}

std::vector<UserId> eligible_users(const Corpus& corpus) {
  std::vector<UserId> out;
  for (const UserId& u : corpus.users()) {
    if (corpus.retweets(u).size() >= kMinRetweetsForSplit) out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentContext::ExperimentContext(const Corpus& corpus, std::span<const UserId> users,
                                     const ExperimentOptions& options)
    : corpus_(corpus), options_(options) {
  std::set<UserId> unique(users.begin(), users.end());
  SplitOptions split_options;
  split_options.negative_ratio = options.negative_ratio;
  split_options.sources = options.sources;
  for (const UserId& u : unique) {
    try {
      TrainTestSplit split =
          split_train_test(corpus, u, split_options, derive_seed(options.seed, "split/" + u));
      for (auto& w : split.warnings) warnings_.push_back(w);
      splits_.emplace(u, std::move(split));
      users_.push_back(u);
    } catch (const std::invalid_argument& e) {
      warnings_.push_back(std::string("skipping user: ") + e.what());
    }
  }

  std::set<const Tweet*> all_training;
  std::vector<const Tweet*> everything;
  for (Source s : options.sources) {
    std::set<const Tweet*> seen;
    for (const auto& [u, split] : splits_) {
      for (const SourceDoc& d : split.train_docs.at(s)) seen.insert(d.tweet);
    }
    std::vector<const Tweet*> tweets(seen.begin(), seen.end());
    std::sort(tweets.begin(), tweets.end(), chronological);
    all_training.insert(tweets.begin(), tweets.end());
    training_.emplace(s, std::move(tweets));
  }
  std::vector<std::vector<std::string>> token_lists;
  std::vector<const Tweet*> ordered(all_training.begin(), all_training.end());
  std::sort(ordered.begin(), ordered.end(), chronological);
  for (const Tweet* t : ordered) token_lists.push_back(tokenize(t->text));
  preprocessor_ = Preprocessor(compute_stoplist_from_tokens(token_lists, options.stoplist_size));

  everything = ordered;
  for (const auto& [u, split] : splits_) {
    for (const TestDoc& d : split.test_docs) everything.push_back(d.tweet);
  }
  preprocessor_.warm(everything);
}

const TrainTestSplit& ExperimentContext::split(const UserId& user) const {
  auto it = splits_.find(user);
  if (it == splits_.end()) throw std::invalid_argument("no split for user '" + user + "'");
  return it->second;
}

const std::vector<const Tweet*>& ExperimentContext::training_tweets(Source source) const {
  auto it = training_.find(source);
  if (it == training_.end()) {
    throw std::invalid_argument("source " + std::string(source_name(source)) +
                                " is not part of the experiment");
  }
  return it->second;
}

const CorpusStats& ExperimentContext::idf_stats(Source source, ModelKind kind, int n) const {
  std::lock_guard lock(stats_mu_);
  auto& slot = stats_[{source, kind, n}];
  if (!slot) {
    auto stats = std::make_unique<CorpusStats>();
    for (const Tweet* t : training_tweets(source)) {
      stats->add_document(model_grams(*t, kind, n, preprocessor_));
    }
    slot = std::move(stats);
  }
  return *slot;
}

std::shared_ptr<const TopicState> train_topic_model(const ExperimentContext& context,
                                                    const ModelConfig& c, Source source,
                                                    const CancelFn& cancel) {
  const auto& tweets = context.training_tweets(source);
  std::vector<TokenizedTweet> tokenized;
  tokenized.reserve(tweets.size());
  for (const Tweet* t : tweets) tokenized.push_back({t, context.preprocessor().tokens(*t)});
  const PooledCorpus pooled = pool(tokenized, c.pooling);
  const uint64_t seed = derive_seed(context.options().seed, "train/" + topic_training_key(c) + "/" +
                                                                std::string(source_name(source)));
  TopicState state;
  switch (c.kind) {
    case ModelKind::kPLSA:
      state = train_plsa(pooled, c.topics, c.iterations, seed, cancel);
      break;
    case ModelKind::kLDA:
      state = train_lda(pooled, c.topics, c.alpha, c.beta, c.iterations, seed, cancel);
      break;
    case ModelKind::kLLDA: {
      // Labels come from the unfiltered tokens so frequent hashtags survive.
      std::vector<TokenizedTweet> raw;
      raw.reserve(tweets.size());
      for (const Tweet* t : tweets) raw.push_back({t, tokenize(t->text)});
      const LabelSet labels = extract_llda_labels(raw, context.options().llda_hashtag_min_count);
      const auto per_doc = pooled_labels(pooled, labels);
      state = train_llda(pooled, per_doc, c.topics, c.alpha, c.beta, c.iterations, seed, cancel);
      break;
    }
    case ModelKind::kHDP:
      state = train_hdp(pooled, c.alpha, c.gamma, c.beta, c.iterations, seed, cancel);
      break;
    case ModelKind::kHLDA:
      state = train_hlda(pooled, c.levels, c.alpha, c.beta, c.gamma, c.iterations, seed, cancel);
      break;
    case ModelKind::kBTM:
      state = train_btm(pooled, c.topics, c.alpha, c.beta, c.btm_window(), c.iterations, seed,
                        cancel);
      break;
    default: throw std::invalid_argument("not a topic model");
  }
  return std::make_shared<const TopicState>(std::move(state));
}

DocumentEncoder make_encoder(const ExperimentContext& context, const ModelConfig& config,
                             Source source, std::shared_ptr<const TopicState> state) {
  const CorpusStats* stats = nullptr;
  if (model_family(config.kind) == ModelFamily::kBag && config.weighting == Weighting::kTFIDF) {
    stats = &context.idf_stats(source, config.kind, config.n);
  }
  if (model_family(config.kind) == ModelFamily::kTopic && !state) {
    state = train_topic_model(context, config, source);
  }
  return DocumentEncoder(config, &context.preprocessor(), stats, std::move(state),
                         context.options().infer);
}

RankedList rank_user(const ExperimentContext& context, const UserId& user,
                     const ModelConfig& config, Source source) {
  const TrainTestSplit& split = context.split(user);
  const DocumentEncoder encoder = make_encoder(context, config, source);
  const UserModel model = build_user_model(split.train_docs.at(source), source, encoder);
  return rank(model, split.test_docs, encoder);
}

// ---------------------------------------------------------------------------

namespace {

WorkResult run_item(const ExperimentContext& context, const ConfigGrid& grid, const WorkItem& item,
                    std::span<const UserId> users) {
  WorkResult result;
  result.outcomes.resize(item.configs.size());
  const ResourceGuard guard(context.options());
  const CancelFn cancel = [&guard] { guard.check(); };
  try {
    std::shared_ptr<const TopicState> state;
    if (item.shared_topic_model) {
      const auto start = Clock::now();
      state = train_topic_model(context, grid.entries[item.configs.front()], item.source, cancel);
      result.shared_train = Clock::now() - start;
    }
    for (std::size_t i = 0; i < item.configs.size(); ++i) {
      const ModelConfig& config = grid.entries[item.configs[i]];
      const DocumentEncoder encoder = make_encoder(context, config, item.source, state);
      for (const UserId& u : users) {
        guard.check();
        const TrainTestSplit& split = context.split(u);
        UserOutcome outcome;
        TimingAccumulator acc;
        const UserModel model = timed(Section::kTrain, acc, [&] {
          return build_user_model(split.train_docs.at(item.source), item.source, encoder);
        });
        const RankedList ranked =
            timed(Section::kTest, acc, [&] { return rank(model, split.test_docs, encoder); });
        outcome.ap = average_precision(ranked);
        outcome.train = acc.train();
        outcome.test = acc.test();
        result.outcomes[i].emplace(u, outcome);
      }
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

int64_t to_ms(std::chrono::nanoseconds ns) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(ns).count();
}

}  // namespace

ExperimentResults run_experiment(const ExperimentContext& context, const ConfigGrid& grid,
                                 std::span<const UserGroup> groups) {
  const ExperimentOptions& options = context.options();
  ExperimentResults results;
  results.warnings = context.warnings();

  // Members of each group that could be split.
  const std::set<UserId> available(context.users().begin(), context.users().end());
  std::vector<UserGroup> members;
  std::set<UserId> evaluated;
  for (const UserGroup& g : groups) {
    UserGroup kept{g.name, {}};
    for (const UserId& u : g.users) {
      if (available.contains(u)) {
        kept.users.push_back(u);
        evaluated.insert(u);
      } else {
        results.warnings.push_back("group " + g.name + ": user '" + u + "' is not evaluable");
      }
    }
    members.push_back(std::move(kept));
  }
  const std::vector<UserId> users(evaluated.begin(), evaluated.end());

  // Work items in grid order; topic configurations that share a trained
  // model are merged into the item of their first occurrence.
  std::vector<WorkItem> items;
  std::map<std::pair<std::string, Source>, std::size_t> topic_items;
  for (std::size_t c = 0; c < grid.entries.size(); ++c) {
    const ModelConfig& config = grid.entries[c];
    for (Source s : options.sources) {
      if (!config_applies_to_source(config, s)) continue;
      if (model_family(config.kind) == ModelFamily::kTopic) {
        const auto key = std::make_pair(topic_training_key(config), s);
        auto it = topic_items.find(key);
        if (it != topic_items.end()) {
          items[it->second].configs.push_back(c);
          continue;
        }
        topic_items.emplace(key, items.size());
        items.push_back({s, {c}, true});
      } else {
        items.push_back({s, {c}, false});
      }
    }
  }

  std::vector<WorkResult> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mu;
  auto log = [&](const std::string& msg) {
    if (!options.log) return;
    std::lock_guard lock(log_mu);
    options.log(msg);
  };
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const WorkItem& item = items[i];
      outcomes[i] = run_item(context, grid, item, users);
      std::string label = grid.entries[item.configs.front()].id();
      if (item.configs.size() > 1) label += " (+" + std::to_string(item.configs.size() - 1) + ")";
      if (outcomes[i].error.empty()) {
        log("[" + std::to_string(i + 1) + "/" + std::to_string(items.size()) + "] " + label +
            " on " + std::string(source_name(item.source)));
      } else {
        log("[" + std::to_string(i + 1) + "/" + std::to_string(items.size()) + "] " + label +
            " on " + std::string(source_name(item.source)) + " FAILED: " + outcomes[i].error);
      }
    }
  };
  const int num_workers = std::max(1, std::min<int>(options.workers, static_cast<int>(items.size())));
  if (num_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < num_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // Cells in grid order, then source, then group.
  struct Slot {
    std::size_t item;
    std::size_t position;
  };
  std::map<std::pair<std::size_t, Source>, Slot> slots;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t p = 0; p < items[i].configs.size(); ++p) {
      slots.emplace(std::make_pair(items[i].configs[p], items[i].source), Slot{i, p});
    }
  }
  for (std::size_t c = 0; c < grid.entries.size(); ++c) {
    for (Source s : options.sources) {
      auto it = slots.find({c, s});
      if (it == slots.end()) continue;
      const WorkResult& work = outcomes[it->second.item];
      for (const UserGroup& g : members) {
        CellResult cell;
        cell.group = g.name;
        cell.source = s;
        cell.config = grid.entries[c];
        if (!work.error.empty()) {
          cell.missing = true;
          cell.error = work.error;
        } else if (g.users.empty()) {
          cell.missing = true;
          cell.error = "no evaluable users in group";
        } else {
          const auto& per_user = work.outcomes[it->second.position];
          std::chrono::nanoseconds train = work.shared_train;
          std::chrono::nanoseconds test{0};
          std::vector<double> aps;
          for (const UserId& u : g.users) {
            const UserOutcome& o = per_user.at(u);
            cell.ap.emplace(u, o.ap);
            aps.push_back(o.ap);
            train += o.train;
            test += o.test;
          }
          cell.map = mean_average_precision(aps);
          cell.ttime_ms = to_ms(train);
          cell.etime_ms = to_ms(test);
        }
        results.cells.push_back(std::move(cell));
      }
    }
  }

  // Baselines.
  std::map<UserId, UserOutcome> chr, ran;
  for (const UserId& u : users) {
    const TrainTestSplit& split = context.split(u);
    TimingAccumulator acc;
    const RankedList list = timed(Section::kTest, acc, [&] { return baseline_chr(split.test_docs); });
    chr[u] = {average_precision(list), {}, acc.test()};

    TimingAccumulator racc;
    double sum = 0.0;
    for (int i = 0; i < options.ran_iterations; ++i) {
      const uint64_t seed = derive_seed(options.seed, "ran/" + u + "/" + std::to_string(i));
      const RankedList r = timed(Section::kTest, racc, [&] { return baseline_ran(split.test_docs, seed); });
      sum += average_precision(r);
    }
    ran[u] = {sum / std::max(1, options.ran_iterations), {}, racc.test()};
  }
  for (const UserGroup& g : members) {
    if (g.users.empty()) continue;
    for (const auto& [name, table] : {std::pair{"CHR", &chr}, std::pair{"RAN", &ran}}) {
      BaselineResult b;
      b.group = g.name;
      b.name = name;
      std::vector<double> aps;
      std::chrono::nanoseconds test{0};
      for (const UserId& u : g.users) {
        const UserOutcome& o = table->at(u);
        b.ap.emplace(u, o.ap);
        aps.push_back(o.ap);
        test += o.test;
      }
      b.map = mean_average_precision(aps);
      b.etime_ms = to_ms(test);
      results.baselines.push_back(std::move(b));
    }
  }
  return results;
}

}  // namespace microrec
