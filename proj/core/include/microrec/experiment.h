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

#ifndef MICROREC_EXPERIMENT_H_
#define MICROREC_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

#include "microrec/eval.h"
#include "microrec/grid.h"
#include "microrec/recommend.h"

namespace microrec {

struct UserGroup {
  std::string name;
  std::vector<UserId> users;
};

// IS, BU and IP by posting ratio plus ALL. Users with an undefined ratio
// only join ALL. Empty groups are dropped.
std::vector<UserGroup> derive_groups(const Corpus& corpus, std::span<const UserId> users);

// "group<TAB>user" lines; '#' starts a comment.
std::vector<UserGroup> read_groups_tsv(std::istream& in);
std::vector<UserGroup> load_groups(const std::filesystem::path& path);

// Every user with enough retweets to be split.
std::vector<UserId> eligible_users(const Corpus& corpus);

struct ExperimentOptions {
  uint64_t seed = 1;
  int workers = 1;
  // Per work item; 0 disables the limit.
  double time_limit_s = 0.0;
  // Resident set size ceiling for the whole process; 0 disables it.
  std::size_t mem_limit_mb = 0;
  std::vector<Source> sources{kAllSources.begin(), kAllSources.end()};
  std::size_t stoplist_size = 100;
  int negative_ratio = 4;
  int ran_iterations = 1000;
  int llda_hashtag_min_count = kLldaHashtagMinCount;
  InferOptions infer;
  // Progress and failure messages; may be called from worker threads but
  // never concurrently.
  std::function<void(const std::string&)> log;
};

// Thrown by the resource guard when a work item exceeds its budget.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Current resident set size in MiB (0 where unavailable).
std::size_t resident_memory_mb();

// Splits, preprocessing and corpus statistics shared by all cells. Built
// once; read-only afterwards except for the internally locked IDF cache.
class ExperimentContext {
 public:
  ExperimentContext(const Corpus& corpus, std::span<const UserId> users,
                    const ExperimentOptions& options);

  const Corpus& corpus() const { return corpus_; }
  const ExperimentOptions& options() const { return options_; }
  // Users that could be split, sorted.
  const std::vector<UserId>& users() const { return users_; }
  const TrainTestSplit& split(const UserId& user) const;
  const Preprocessor& preprocessor() const { return preprocessor_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Training tweets of every user for a source, deduplicated, sorted by
  // (timestamp, id).
  const std::vector<const Tweet*>& training_tweets(Source source) const;

  // Document frequencies of the n-grams of a source's training tweets.
  const CorpusStats& idf_stats(Source source, ModelKind kind, int n) const;

 private:
  const Corpus& corpus_;
  ExperimentOptions options_;
  std::vector<UserId> users_;
  std::map<UserId, TrainTestSplit> splits_;
  std::map<Source, std::vector<const Tweet*>> training_;
  Preprocessor preprocessor_;
  std::vector<std::string> warnings_;
  mutable std::mutex stats_mu_;
  mutable std::map<std::tuple<Source, ModelKind, int>, std::unique_ptr<CorpusStats>> stats_;
};

// Trains the shared model M(s) of a topic configuration on all users'
// training tweets of the source.
std::shared_ptr<const TopicState> train_topic_model(const ExperimentContext& context,
                                                    const ModelConfig& config, Source source,
                                                    const CancelFn& cancel = {});

// Builds the encoder a configuration needs for a source (training the topic
// model when `state` is null and the configuration is a topic model).
DocumentEncoder make_encoder(const ExperimentContext& context, const ModelConfig& config,
                             Source source, std::shared_ptr<const TopicState> state = nullptr);

// Ranks one user's test set; used by the debug subcommand.
RankedList rank_user(const ExperimentContext& context, const UserId& user,
                     const ModelConfig& config, Source source);

struct CellResult {
  std::string group;
  Source source = Source::kT;
  ModelConfig config;
  bool missing = false;
  std::string error;
  std::map<UserId, double> ap;
  double map = 0.0;
  int64_t ttime_ms = 0;
  int64_t etime_ms = 0;
};

struct BaselineResult {
  std::string group;
  std::string name;  // CHR or RAN
  std::map<UserId, double> ap;
  double map = 0.0;
  int64_t ttime_ms = 0;
  int64_t etime_ms = 0;
};

struct ExperimentResults {
  std::vector<CellResult> cells;
  std::vector<BaselineResult> baselines;
  std::vector<std::string> warnings;
};

// Evaluates every (configuration, source, group) cell plus the CHR and RAN
// baselines per group. Failed work items become missing cells. Cells are
// returned in grid order, then source order, then group order, independent
// of the number of workers.
ExperimentResults run_experiment(const ExperimentContext& context, const ConfigGrid& grid,
                                 std::span<const UserGroup> groups);

}  // namespace microrec

#endif  // MICROREC_EXPERIMENT_H_
