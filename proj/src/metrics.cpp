// Copyright 2026 The AdvDialog Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advdialog/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "io_util.hpp"

namespace advdialog {
namespace {

std::string f4(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& header,
                                               size_t fields) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || io::trim(line) != header) {
    throw ParseError(path.string() + ":1: bad csv header, expected '" + header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = io::trim(line);
    if (body.empty()) continue;
    std::vector<std::string> cells = io::split(body, ',');
    if (cells.size() != fields) {
      io::parse_fail(path, line_no,
                     "expected " + std::to_string(fields) + " fields, found " +
                         std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

const std::string kMetricsHeader = "episode,success_rate,avg_reward,avg_turns,seed,agent";
const std::string kSummaryHeader =
    "agent,seed,final_success_rate,final_avg_reward,final_avg_turns,auc";

}  // namespace

void save_metrics_csv(const std::filesystem::path& path,
                      const std::vector<MetricsRow>& rows) {
  std::ofstream out = io::open_out(path);
  out << kMetricsHeader << "\n";
  for (const MetricsRow& r : rows) {
    out << r.episode << "," << f4(r.success_rate) << "," << f4(r.avg_reward) << ","
        << f4(r.avg_turns) << "," << r.seed << "," << r.agent << "\n";
  }
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

std::vector<MetricsRow> load_metrics_csv(const std::filesystem::path& path) {
  std::vector<MetricsRow> rows;
  for (const auto& cells : read_csv(path, kMetricsHeader, 6)) {
    MetricsRow r;
    try {
      r.episode = std::stoi(cells[0]);
      r.success_rate = std::stod(cells[1]);
      r.avg_reward = std::stod(cells[2]);
      r.avg_turns = std::stod(cells[3]);
      r.seed = std::stoull(cells[4]);
    } catch (const std::exception& e) {
      throw ParseError(path.string() + ": bad metrics row: " + e.what());
    }
    r.agent = cells[5];
    rows.push_back(std::move(r));
  }
  return rows;
}

Scalar success_auc(const std::vector<MetricsRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty learning curve");
  if (rows.size() == 1) return rows[0].success_rate;
  Scalar area = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const Scalar dx = static_cast<Scalar>(rows[i].episode - rows[i - 1].episode);
    if (dx <= 0) throw std::invalid_argument("curve episodes must increase");
    area += 0.5 * (rows[i].success_rate + rows[i - 1].success_rate) * dx;
  }
  return area / static_cast<Scalar>(rows.back().episode - rows.front().episode);
}

void save_summary_csv(const std::filesystem::path& path,
                      const std::vector<SummaryRow>& rows) {
  std::ofstream out = io::open_out(path);
  out << kSummaryHeader << "\n";
  for (const SummaryRow& r : rows) {
    out << r.agent << "," << r.seed << "," << f4(r.final_success_rate) << ","
        << f4(r.final_avg_reward) << "," << f4(r.final_avg_turns) << "," << f4(r.auc)
        << "\n";
  }
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

std::vector<SummaryRow> load_summary_csv(const std::filesystem::path& path) {
  std::vector<SummaryRow> rows;
  for (const auto& cells : read_csv(path, kSummaryHeader, 6)) {
    SummaryRow r;
    r.agent = cells[0];
    try {
      r.seed = std::stoull(cells[1]);
      r.final_success_rate = std::stod(cells[2]);
      r.final_avg_reward = std::stod(cells[3]);
      r.final_avg_turns = std::stod(cells[4]);
      r.auc = std::stod(cells[5]);
    } catch (const std::exception& e) {
      throw ParseError(path.string() + ": bad summary row: " + e.what());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace advdialog
