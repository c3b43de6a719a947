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
// Training drivers: the scripted rule agent, supervised warm start from it,
// greedy evaluation, the per-episode training loops for both learned
// agents, and the multi-seed benchmark.

#ifndef ADVDIALOG_TRAINER_HPP_
#define ADVDIALOG_TRAINER_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "advdialog/a2c.hpp"
#include "advdialog/adversarial.hpp"
#include "advdialog/checkpoint.hpp"
#include "advdialog/config.hpp"
#include "advdialog/environment.hpp"
#include "advdialog/metrics.hpp"
#include "advdialog/types.hpp"

namespace advdialog {

enum class AgentKind {
  kRule,         // scripted baseline, no learning
  kA2c,          // extrinsic reward only
  kAdvA2c,       // extrinsic + adversarial intrinsic reward
  kAdvA2cFrozen  // ablation: discriminator frozen at D = 0.5
};

const std::string& agent_name(AgentKind kind);
std::optional<AgentKind> agent_from_name(const std::string& name);

// World built from the config's world_seed, KB size, goal count and rewards.
World make_world(const TrainConfig& config);

// Scripted policy: answer the user's outstanding questions (slot order),
// quote a ticket, and book — unless a constraint is still hedged, in which
// case it hangs up rather than risk booking the wrong showing. It never
// doubles back on a hedge itself, so those dialogues are lost causes for it.
int rule_policy(const World& world, const DialogState& dialog);

struct PretrainResult {
  int examples = 0;
  int epochs = 0;
  Scalar train_accuracy = 0.0;
  Scalar holdout_accuracy = 0.0;
  bool reached_target = false;  // callers warn when the target was missed
};

// Supervised warm start: behavior cloning of the rule agent by minibatch
// cross-entropy until the held-out split (every 10th example) reaches the
// target accuracy or the epoch budget runs out.
PretrainResult pretrain_actor(Actor& actor, const World& world,
                              const TrainConfig& config, Rng rng);

struct EvalResult {
  Scalar success_rate = 0.0;  // fraction in [0,1]
  Scalar avg_reward = 0.0;
  Scalar avg_turns = 0.0;
};

EvalResult evaluate_policy(const World& world, const PolicyFn& policy, int episodes,
                           Rng env_rng, Scalar noise_prob);
// Greedy-actor evaluation.
EvalResult evaluate_actor(const World& world, const DenseNet& actor, int episodes,
                          Rng env_rng, Scalar noise_prob);
// Rule-agent evaluation (the rule needs the tracked dialogue, not features).
EvalResult evaluate_rule(const World& world, int episodes, Rng env_rng,
                         Scalar noise_prob);

struct TrainResult {
  AgentKind kind = AgentKind::kRule;
  std::uint64_t seed = 0;
  Actor actor;            // empty for the rule agent
  Critic critic;
  Critic gan_critic;      // adversarial agents only
  Discriminator disc;     // adversarial agents only
  DemoBuffer demos;       // adversarial agent only
  PretrainResult pretrain;
  std::vector<MetricsRow> curve;  // episode 0, then every eval_every episodes
};

// Runs the full pipeline for one agent and seed: init, warm start, demo
// collection (adversarial), the per-episode loop, and periodic evaluation
// snapshots (the last one with final_eval_episodes dialogues). All
// randomness derives from `seed`, so reruns are byte-identical. `trace`,
// when given, records the per-episode operation order ("rollout",
// "actor_extrinsic", "critic", "demo_sample", "actor_gan", "gan_critic",
// "disc"). `demos`, when given, overrides collection for the adversarial
// agent.
TrainResult train_agent(const World& world, const TrainConfig& config, AgentKind kind,
                        std::uint64_t seed, std::vector<std::string>* trace = nullptr,
                        const DemoBuffer* demos = nullptr);

// Checkpoint with the run's nets, demos and identifying metadata.
Checkpoint make_checkpoint(const TrainResult& result, const TrainConfig& config);

struct BenchmarkResult {
  std::vector<MetricsRow> curves;    // rule, a2c, adv-a2c x seeds, canonical order
  std::vector<SummaryRow> summary;
  std::vector<std::string> failures;  // "<agent>-<seed>: <error>", usually empty
};

// Trains rule/a2c/adv-a2c across config.seeds, writing per-run checkpoints
// and metrics under out_dir/runs/<agent>-<seed>/ plus learning_curves.csv
// and summary.csv. `jobs` > 1 distributes runs over threads; outputs are
// identical regardless. A run that throws is reported in `failures` and
// left out of the aggregates; the remaining runs still complete.
BenchmarkResult run_benchmark(const World& world, const TrainConfig& config,
                              const std::filesystem::path& out_dir, int jobs);

}  // namespace advdialog

#endif  // ADVDIALOG_TRAINER_HPP_
