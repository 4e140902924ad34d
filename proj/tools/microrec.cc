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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "microrec/corpus_io.h"
#include "microrec/experiment.h"
#include "microrec/grid.h"
#include "microrec/report.h"
#include "microrec/synth.h"

namespace fs = std::filesystem;
using namespace microrec;

namespace {

struct CommonFlags {
  uint64_t seed = 1;
  int workers = 1;
  double time_limit_s = 0.0;
  std::size_t mem_limit_mb = 0;
  std::vector<std::string> sources;
  std::string groups;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  cmd->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--time-limit-s", f.time_limit_s, "Per work item time limit (0 = none)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--mem-limit-mb", f.mem_limit_mb, "Resident memory ceiling (0 = none)");
  cmd->add_option("--sources", f.sources, "Representation sources, e.g. T,R,TE")
      ->delimiter(',');
  cmd->add_option("--groups", f.groups, "Group membership file (group<TAB>user per line)");
}

ExperimentOptions make_options(const CommonFlags& f) {
  ExperimentOptions o;
  o.seed = f.seed;
  o.workers = f.workers;
  o.time_limit_s = f.time_limit_s;
  o.mem_limit_mb = f.mem_limit_mb;
  if (!f.sources.empty()) {
    o.sources.clear();
    for (const auto& s : f.sources) o.sources.push_back(parse_source(s));
  }
  o.log = [](const std::string& msg) { std::cerr << msg << '\n'; };
  return o;
}

Corpus open_corpus(const fs::path& dir) {
  return load_corpus(dir / "tweets.jsonl", dir / "graph.tsv");
}

std::vector<UserId> select_users(const Corpus& corpus, const UserFilter& filter,
                                 const std::vector<UserGroup>* groups) {
  std::vector<UserId> users = eligible_users(corpus);
  users = filter_users(corpus, users, filter);
  if (groups == nullptr) return users;
  std::set<UserId> wanted;
  for (const auto& g : *groups) wanted.insert(g.users.begin(), g.users.end());
  std::vector<UserId> out;
  for (const auto& u : users) {
    if (wanted.contains(u)) out.push_back(u);
  }
  return out;
}

void write_truth(const fs::path& path, const SynthTruth& truth) {
  nlohmann::ordered_json j;
  j["users"] = truth.users;
  j["preferences"] = truth.preferences;
  j["phi"] = truth.phi;
  j["vocabulary"] = truth.vocabulary;
  j["tweet_topic"] = truth.tweet_topic;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump() << '\n';
}

void print_corpus_stats(const Corpus& corpus) {
  std::size_t retweets = 0;
  for (const auto& t : corpus.tweets()) retweets += t.retweet_of.has_value();
  std::cout << "tweets " << corpus.tweets().size() << '\n'
            << "retweets " << retweets << '\n'
            << "users " << corpus.users().size() << '\n'
            << "follow_edges " << corpus.graph().edge_count() << '\n'
            << "eligible_users " << eligible_users(corpus).size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microrec: content-based microblog recommendation benchmark"};
  app.set_config("--config", "", "Flat key = value file with option defaults");
  app.require_subcommand(1);

  // ingest
  std::string in_tweets, in_graph, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write it in canonical form");
  ingest->add_option("tweets", in_tweets, "Tweets as JSON lines")->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("graph", in_graph, "Follow graph (follower<TAB>followee)")->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("-o,--out", ingest_out, "Output corpus directory");

  // synth
  std::string synth_spec_path, synth_out;
  std::optional<uint64_t> synth_seed;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus from a spec file");
  synth->add_option("spec", synth_spec_path, "Synthetic spec (key = value)")
      ->check(CLI::ExistingFile);
  synth->add_option("-o,--out", synth_out, "Output corpus directory")->required();
  synth->add_option("--seed", synth_seed, "Override the generator seed");

  // grid
  std::string grid_path;
  bool grid_list = false, grid_dump = false;
  auto* grid = app.add_subcommand("grid", "Print or validate a configuration grid");
  grid->add_option("file", grid_path, "Grid file (defaults to the built-in grid)")
      ->check(CLI::ExistingFile);
  grid->add_flag("--list", grid_list, "Print every configuration id");
  grid->add_flag("--dump", grid_dump, "Print the effective grid file");

  // run
  CommonFlags run_flags;
  std::string run_corpus, run_grid, run_out;
  UserFilter run_filter;
  int ran_iterations = 1000;
  auto* run = app.add_subcommand("run", "Evaluate a grid on a corpus");
  run->add_option("corpus", run_corpus, "Corpus directory (tweets.jsonl, graph.tsv)")->required()
      ->check(CLI::ExistingDirectory);
  run->add_option("--grid", run_grid, "Grid file")->check(CLI::ExistingFile);
  run->add_option("-o,--out", run_out, "Report directory")->required();
  run->add_option("--min-followers", run_filter.min_followers, "Curation filter");
  run->add_option("--min-followees", run_filter.min_followees, "Curation filter");
  run->add_option("--min-retweets", run_filter.min_retweets, "Curation filter");
  run->add_option("--ran-iterations", ran_iterations, "Permutations per user for RAN")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_common(run, run_flags);

  // rank
  CommonFlags rank_flags;
  std::string rank_corpus, rank_user_id, rank_config, rank_source = "T";
  auto* rank_cmd = app.add_subcommand("rank", "Rank one user's test set with one configuration");
  rank_cmd->add_option("corpus", rank_corpus, "Corpus directory")->required()
      ->check(CLI::ExistingDirectory);
  rank_cmd->add_option("--user", rank_user_id, "User id")->required();
  rank_cmd->add_option("--model", rank_config, "Configuration id, e.g. TN:n=1:w=TF:a=centroid:s=CS")
      ->required();
  rank_cmd->add_option("--source", rank_source, "Representation source")->capture_default_str();
  add_common(rank_cmd, rank_flags);

  // report
  std::string report_results, report_out, report_format = "all";
  auto* report = app.add_subcommand("report", "Re-emit reports from results.json");
  report->add_option("results", report_results, "results.json of a run")->required()
      ->check(CLI::ExistingFile);
  report->add_option("--format", report_format, "csv, markdown or all")
      ->check(CLI::IsMember({"csv", "markdown", "all"}))->capture_default_str();
  report->add_option("-o,--out", report_out, "Directory for format=all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      Corpus corpus = load_corpus(in_tweets, in_graph);
      print_corpus_stats(corpus);
      if (!ingest_out.empty()) {
        fs::create_directories(ingest_out);
        write_tweets_jsonl(fs::path(ingest_out) / "tweets.jsonl", corpus.tweets());
        write_graph_tsv(fs::path(ingest_out) / "graph.tsv", corpus.graph());
      }
    } else if (*synth) {
      SynthSpec spec = synth_spec_path.empty() ? SynthSpec{} : load_synth_spec(synth_spec_path);
      if (synth_seed) spec.seed = *synth_seed;
      SynthCorpus generated = generate_synthetic(spec);
      fs::create_directories(synth_out);
      const fs::path dir(synth_out);
      write_tweets_jsonl(dir / "tweets.jsonl", generated.tweets);
      write_graph_tsv(dir / "graph.tsv", generated.graph);
      write_truth(dir / "truth.json", generated.truth);
      std::ofstream spec_out(dir / "synth.conf");
      write_synth_spec(spec_out, spec);
      Corpus corpus(std::move(generated.tweets), std::move(generated.graph));
      print_corpus_stats(corpus);
    } else if (*grid) {
      const GridSpec spec = grid_path.empty() ? default_grid_spec() : load_grid_spec(grid_path);
      if (grid_dump) {
        write_grid_spec(std::cout, spec);
        return 0;
      }
      const ConfigGrid expanded = expand_grid(spec);
      if (grid_list) {
        for (const auto& c : expanded.entries) std::cout << c.id() << '\n';
        return 0;
      }
      for (const auto& [kind, n] : expanded.counts) {
        std::cout << model_kind_name(kind) << ' ' << n << '\n';
      }
      std::cout << "total " << expanded.size() << '\n';
    } else if (*run) {
      const Corpus corpus = open_corpus(run_corpus);
      const GridSpec spec = run_grid.empty() ? default_grid_spec() : load_grid_spec(run_grid);
      const ConfigGrid expanded = expand_grid(spec);
      ExperimentOptions options = make_options(run_flags);
      options.ran_iterations = ran_iterations;
      std::optional<std::vector<UserGroup>> explicit_groups;
      if (!run_flags.groups.empty()) explicit_groups = load_groups(run_flags.groups);
      const auto users =
          select_users(corpus, run_filter, explicit_groups ? &*explicit_groups : nullptr);
      const ExperimentContext context(corpus, users, options);
      const std::vector<UserGroup> groups =
          explicit_groups ? *explicit_groups : derive_groups(corpus, context.users());
      std::cerr << "users " << context.users().size() << ", configurations " << expanded.size()
                << ", sources " << options.sources.size() << '\n';
      const ExperimentResults results = run_experiment(context, expanded, groups);
      for (const auto& w : results.warnings) std::cerr << "warning: " << w << '\n';
      emit_report(results, fs::path(run_out));
      std::size_t missing = 0;
      for (const auto& c : results.cells) missing += c.missing;
      std::cerr << results.cells.size() << " cells, " << missing << " missing\n";
    } else if (*rank_cmd) {
      const Corpus corpus = open_corpus(rank_corpus);
      const ExperimentOptions options = make_options(rank_flags);
      const std::vector<UserId> users{rank_user_id};
      const ExperimentContext context(corpus, users, options);
      for (const auto& w : context.warnings()) std::cerr << "warning: " << w << '\n';
      if (context.users().empty()) throw std::runtime_error("user cannot be evaluated");
      const ModelConfig config = parse_config_id(rank_config);
      const RankedList ranked = rank_user(context, rank_user_id, config, parse_source(rank_source));
      write_ranked_csv(std::cout, ranked);
      std::fprintf(stderr, "AP %.6f\n", average_precision(ranked));
    } else if (*report) {
      std::ifstream in(report_results);
      const ExperimentResults results = read_results_json(in);
      if (report_format == "csv") {
        emit_report(results, ReportFormat::kCsv, std::cout);
      } else if (report_format == "markdown") {
        emit_report(results, ReportFormat::kMarkdown, std::cout);
      } else {
        if (report_out.empty()) throw std::runtime_error("--out is required with --format all");
        emit_report(results, fs::path(report_out));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
