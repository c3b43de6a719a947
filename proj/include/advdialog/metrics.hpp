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
//
// Evaluation metrics rows, their CSV serialization, and learning-curve
// summaries. Floats are written with four decimals via a fixed format so
// reruns produce byte-identical files.

#ifndef ADVDIALOG_METRICS_HPP_
#define ADVDIALOG_METRICS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "advdialog/types.hpp"

namespace advdialog {

struct MetricsRow {
  int episode = 0;  // training episodes completed when the snapshot was taken
  Scalar success_rate = 0.0;  // percent, in [0, 100]
  Scalar avg_reward = 0.0;
  Scalar avg_turns = 0.0;
  std::uint64_t seed = 0;
  std::string agent;
};

// Header: episode,success_rate,avg_reward,avg_turns,seed,agent
void save_metrics_csv(const std::filesystem::path& path,
                      const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> load_metrics_csv(const std::filesystem::path& path);

// Normalized area under the success-rate curve: trapezoids over the episode
// axis divided by the episode span, so flat curves give their own level.
// Rows must belong to one run, in increasing episode order.
Scalar success_auc(const std::vector<MetricsRow>& rows);

struct SummaryRow {
  std::string agent;
  std::uint64_t seed = 0;
  Scalar final_success_rate = 0.0;  // percent, like the curve rows
  Scalar final_avg_reward = 0.0;
  Scalar final_avg_turns = 0.0;
  Scalar auc = 0.0;
};

// Header: agent,seed,final_success_rate,final_avg_reward,final_avg_turns,auc
void save_summary_csv(const std::filesystem::path& path,
                      const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> load_summary_csv(const std::filesystem::path& path);

}  // namespace advdialog

#endif  // ADVDIALOG_METRICS_HPP_
