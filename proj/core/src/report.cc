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

#include "microrec/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <nlohmann/json.hpp>

namespace microrec {
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string md_field(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> row_fields(const ReportRow& r, bool with_timing) {
  std::vector<std::string> f{r.group,          r.source,          r.model,
                             r.config_id,      fixed6(r.min_map), fixed6(r.mean_map),
                             fixed6(r.max_map), fixed6(r.map_dev)};
  if (with_timing) {
    f.push_back(std::to_string(r.ttime_ms));
    f.push_back(std::to_string(r.etime_ms));
  }
  return f;
}

const std::vector<std::string>& header(bool with_timing) {
  static const std::vector<std::string> full{"group",    "source",   "model",    "config_id",
                                             "min_map",  "mean_map", "max_map",  "map_dev",
                                             "ttime_ms", "etime_ms"};
  static const std::vector<std::string> untimed(full.begin(), full.end() - 2);
  return with_timing ? full : untimed;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<ReportRow> summarize(const ExperimentResults& results) {
  std::vector<ReportRow> rows;
  struct Acc {
    std::vector<double> maps;
    int64_t ttime = 0;
    int64_t etime = 0;
  };
  std::map<std::tuple<std::string, std::string, std::string>, Acc> per_model;
  for (const CellResult& c : results.cells) {
    if (c.missing) continue;
    ReportRow r;
    r.group = c.group;
    r.source = std::string(source_name(c.source));
    r.model = std::string(model_kind_name(c.config.kind));
    r.config_id = c.config.id();
    r.min_map = r.mean_map = r.max_map = c.map;
    r.ttime_ms = c.ttime_ms;
    r.etime_ms = c.etime_ms;
    Acc& acc = per_model[{r.group, r.source, r.model}];
    acc.maps.push_back(c.map);
    acc.ttime += c.ttime_ms;
    acc.etime += c.etime_ms;
    rows.push_back(std::move(r));
  }
  for (const auto& [key, acc] : per_model) {
    ReportRow r;
    std::tie(r.group, r.source, r.model) = key;
    r.config_id = "*";
    r.min_map = *std::min_element(acc.maps.begin(), acc.maps.end());
    r.max_map = *std::max_element(acc.maps.begin(), acc.maps.end());
    r.mean_map = mean_average_precision(acc.maps);
    r.map_dev = map_deviation(acc.maps);
    const auto n = static_cast<int64_t>(acc.maps.size());
    r.ttime_ms = acc.ttime / n;
    r.etime_ms = acc.etime / n;
    rows.push_back(std::move(r));
  }
  for (const BaselineResult& b : results.baselines) {
    ReportRow r;
    r.group = b.group;
    r.source = "-";
    r.model = b.name;
    r.config_id = b.name;
    r.min_map = r.mean_map = r.max_map = b.map;
    r.ttime_ms = b.ttime_ms;
    r.etime_ms = b.etime_ms;
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.group, a.source, a.model, a.config_id) <
           std::tie(b.group, b.source, b.model, b.config_id);
  });
  return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows, bool with_timing) {
  const auto& h = header(with_timing);
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
  for (const ReportRow& r : rows) {
    const auto f = row_fields(r, with_timing);
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_field(f[i]);
    out << '\n';
  }
}

void write_report_markdown(std::ostream& out, const std::vector<ReportRow>& rows) {
  const auto& h = header(true);
  out << '|';
  for (const auto& c : h) out << ' ' << c << " |";
  out << "\n|";
  for (std::size_t i = 0; i < h.size(); ++i) out << (i < 4 ? "---|" : "---:|");
  out << '\n';
  for (const ReportRow& r : rows) {
    out << '|';
    for (const auto& f : row_fields(r, true)) out << ' ' << md_field(f) << " |";
    out << '\n';
  }
}

void write_missing_csv(std::ostream& out, const ExperimentResults& results) {
  out << "group,source,config_id,error\n";
  for (const CellResult& c : results.cells) {
    if (!c.missing) continue;
    out << csv_field(c.group) << ',' << source_name(c.source) << ',' << csv_field(c.config.id())
        << ',' << csv_field(c.error) << '\n';
  }
}

void write_ap_csv(std::ostream& out, const ExperimentResults& results) {
  out << "group,source,config_id,user,ap\n";
  char buf[32];
  auto line = [&](const std::string& group, std::string_view source, const std::string& id,
                  const UserId& user, double ap) {
    std::snprintf(buf, sizeof(buf), "%.17g", ap);
    out << csv_field(group) << ',' << source << ',' << csv_field(id) << ',' << csv_field(user)
        << ',' << buf << '\n';
  };
  for (const CellResult& c : results.cells) {
    if (c.missing) continue;
    const std::string id = c.config.id();
    for (const auto& [u, ap] : c.ap) line(c.group, source_name(c.source), id, u, ap);
  }
  for (const BaselineResult& b : results.baselines) {
    for (const auto& [u, ap] : b.ap) line(b.group, "-", b.name, u, ap);
  }
}

void write_results_json(std::ostream& out, const ExperimentResults& results) {
  nlohmann::ordered_json doc;
  doc["warnings"] = results.warnings;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const CellResult& c : results.cells) {
    nlohmann::ordered_json j;
    j["group"] = c.group;
    j["source"] = source_name(c.source);
    j["config_id"] = c.config.id();
    j["missing"] = c.missing;
    j["error"] = c.error;
    j["ap"] = c.ap;
    j["map"] = c.map;
    j["ttime_ms"] = c.ttime_ms;
    j["etime_ms"] = c.etime_ms;
    doc["cells"].push_back(std::move(j));
  }
  doc["baselines"] = nlohmann::ordered_json::array();
  for (const BaselineResult& b : results.baselines) {
    nlohmann::ordered_json j;
    j["group"] = b.group;
    j["name"] = b.name;
    j["ap"] = b.ap;
    j["map"] = b.map;
    j["ttime_ms"] = b.ttime_ms;
    j["etime_ms"] = b.etime_ms;
    doc["baselines"].push_back(std::move(j));
  }
  out << doc.dump(1) << '\n';
}

ExperimentResults read_results_json(std::istream& in) {
  ExperimentResults results;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    results.warnings = doc.value("warnings", std::vector<std::string>{});
    for (const auto& j : doc.at("cells")) {
      CellResult c;
      c.group = j.at("group").get<std::string>();
      c.source = parse_source(j.at("source").get<std::string>());
      c.config = parse_config_id(j.at("config_id").get<std::string>());
      c.missing = j.at("missing").get<bool>();
      c.error = j.at("error").get<std::string>();
      c.ap = j.at("ap").get<std::map<UserId, double>>();
      c.map = j.at("map").get<double>();
      c.ttime_ms = j.at("ttime_ms").get<int64_t>();
      c.etime_ms = j.at("etime_ms").get<int64_t>();
      results.cells.push_back(std::move(c));
    }
    for (const auto& j : doc.at("baselines")) {
      BaselineResult b;
      b.group = j.at("group").get<std::string>();
      b.name = j.at("name").get<std::string>();
      b.ap = j.at("ap").get<std::map<UserId, double>>();
      b.map = j.at("map").get<double>();
      b.ttime_ms = j.at("ttime_ms").get<int64_t>();
      b.etime_ms = j.at("etime_ms").get<int64_t>();
      results.baselines.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("results json: ") + e.what());
  }
  return results;
}

void emit_report(const ExperimentResults& results, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto rows = summarize(results);
  std::ostringstream csv, md, maps, missing, ap, json;
  write_report_csv(csv, rows, true);
  write_report_markdown(md, rows);
  write_report_csv(maps, rows, false);
  write_missing_csv(missing, results);
  write_ap_csv(ap, results);
  write_results_json(json, results);
  write_file(dir / "report.csv", csv.str());
  write_file(dir / "report.md", md.str());
  write_file(dir / "maps.csv", maps.str());
  write_file(dir / "missing.csv", missing.str());
  write_file(dir / "ap.csv", ap.str());
  write_file(dir / "results.json", json.str());
}

void emit_report(const ExperimentResults& results, ReportFormat format, std::ostream& out) {
  const auto rows = summarize(results);
  if (format == ReportFormat::kCsv) {
    write_report_csv(out, rows, true);
  } else {
    write_report_markdown(out, rows);
  }
}

}  // namespace microrec
