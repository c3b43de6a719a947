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
// Training configuration and the `key = value` config file format.

#ifndef ADVDIALOG_CONFIG_HPP_
#define ADVDIALOG_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "advdialog/types.hpp"

namespace advdialog {

struct TrainConfig {
  // World construction.
  std::uint64_t world_seed = 7;
  int kb_rows = 300;
  int goal_count = 128;
  Scalar noise_prob = 0.0;

  // Dialogue budget and rewards.
  int max_turns = 40;
  Scalar per_turn_reward = -1.0;
  Scalar success_bonus = 80.0;
  Scalar failure_penalty = -40.0;
  Scalar gamma = 0.9;

  // Networks and optimizers.
  int hidden = 80;
  Scalar actor_lr = 0.005;
  Scalar critic_lr = 0.005;
  Scalar disc_lr = 0.001;
  Scalar rmsprop_rho = 0.9;
  Scalar rmsprop_eps = 1e-8;
  Scalar entropy_coef = 0.0;
  Scalar max_grad_norm = kInfinity;
  Scalar disc_clamp = 1e-6;
  // Only per-episode alternation is implemented; the knob exists so configs
  // state the schedule explicitly.
  std::string alternation = "per-episode";

  // Schedule.
  int episodes = 2000;
  int eval_every = 100;
  int eval_episodes = 500;
  int final_eval_episodes = 1000;

  // Supervised warm start and demonstrations.
  int pretrain_examples = 3000;
  int pretrain_batch = 32;
  int pretrain_max_epochs = 50;
  Scalar pretrain_target_accuracy = 0.85;
  int demo_count = 50;
  int demo_attempt_factor = 100;  // attempt budget = factor * demo_count

  // Benchmark.
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
};

// Throws ConfigError on out-of-range values.
void validate(const TrainConfig& config);

// `key = value` lines; '#' comments and blank lines are skipped; unknown
// keys raise ConfigError; later entries overwrite earlier ones. `seeds` is
// comma-separated; `max_grad_norm` accepts "inf". The result is validated.
TrainConfig load_train_config(const std::filesystem::path& path);
// Same, from a string (the file loader and tests share it).
TrainConfig parse_train_config(const std::string& text, const std::string& origin);

}  // namespace advdialog

#endif  // ADVDIALOG_CONFIG_HPP_
