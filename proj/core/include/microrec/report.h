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

#ifndef MICROREC_REPORT_H_
#define MICROREC_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "microrec/experiment.h"

namespace microrec {

// One line of the summary table. Per-configuration rows have min = mean = max
// and a zero deviation; "*" rows aggregate the configurations of a model on a
// (group, source) pair; baselines use source "-".
struct ReportRow {
  std::string group;
  std::string source;
  std::string model;
  std::string config_id;
  double min_map = 0.0;
  double mean_map = 0.0;
  double max_map = 0.0;
  double map_dev = 0.0;
  int64_t ttime_ms = 0;
  int64_t etime_ms = 0;
};

// Rows sorted by (group, source, model, config_id). Missing cells are left
// out and listed by write_missing_csv instead.
std::vector<ReportRow> summarize(const ExperimentResults& results);

enum class ReportFormat { kCsv, kMarkdown };

// Columns: group, source, model, config_id, min_map, mean_map, max_map,
// map_dev, ttime_ms, etime_ms. Without timing the last two are omitted, which
// makes the output a pure function of corpus, grid and seed.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                      bool with_timing = true);
void write_report_markdown(std::ostream& out, const std::vector<ReportRow>& rows);

// group,source,config_id,error
void write_missing_csv(std::ostream& out, const ExperimentResults& results);
// group,source,config_id,user,ap (baselines use source "-")
void write_ap_csv(std::ostream& out, const ExperimentResults& results);

void write_results_json(std::ostream& out, const ExperimentResults& results);
ExperimentResults read_results_json(std::istream& in);

// Writes report.csv, report.md, maps.csv (no timing), missing.csv, ap.csv and
// results.json into `dir`, creating it if needed.
void emit_report(const ExperimentResults& results, const std::filesystem::path& dir);

// Writes only the requested format of the summary table.
void emit_report(const ExperimentResults& results, ReportFormat format, std::ostream& out);

}  // namespace microrec

#endif  // MICROREC_REPORT_H_
